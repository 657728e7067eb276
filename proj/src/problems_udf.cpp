// UDF1-UDF6 (Biswas, Das, Suganthan and Coello), bi-objective members.
// Distance variables j = 2..n are split into odd (J1, feeding f1) and even
// (J2, feeding f2) index sets, 1-based as in the source definitions.

#include "epimoea/errors.hpp"
#include "epimoea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace epimoea::detail {
namespace {

using std::numbers::pi;

constexpr double kPieces = 10.0;   // N: number of bumps per unit of x1
constexpr double kEpsilon = 0.1;

double G(double p) { return std::sin(0.5 * pi * p); }

enum class Kind { Udf1, Udf2, Udf3, Udf4, Udf5, Udf6 };

std::vector<Bounds> udf_bounds(std::size_t d, double lo, double hi)
{
    std::vector<Bounds> b(d, Bounds{lo, hi});
    b[0] = Bounds{0.0, 1.0};
    return b;
}

class Udf final : public DynamicProblem {
public:
    Udf(std::string name, Kind kind, Category cat, bool connected, std::vector<Bounds> bounds, double period)
        : DynamicProblem(std::move(name), std::move(bounds), cat, connected, period)
        , kind_(kind)
    {
    }

protected:
    // Pareto-optimal value of variable j (1-based) given x1.
    double optimum(std::size_t j, double x1, double p) const
    {
        const double n = static_cast<double>(dimension());
        const double jd = static_cast<double>(j);
        const double gt = G(p);
        switch (kind_) {
        case Kind::Udf1:
        case Kind::Udf6:
            return std::sin(6.0 * pi * x1 + jd * pi / n) + gt;
        case Kind::Udf2:
            return std::pow(x1, 0.5 * (2.0 + 3.0 * (jd - 2.0) / (n - 2.0) + gt)) + gt;
        case Kind::Udf3:
            return std::sin(6.0 * pi * x1 + jd * pi / n);
        case Kind::Udf4: {
            const double k = std::ceil(n * gt);
            return std::sin(6.0 * pi * x1 + (jd + k) * pi / n);
        }
        case Kind::Udf5:
            return std::pow(x1, 0.5 * (2.0 + 3.0 * (jd - 2.0) / (n - 2.0) + gt));
        }
        return 0.0;
    }

    double bump(double x1, double p) const
    {
        const double amp = 1.0 / (2.0 * kPieces) + kEpsilon;
        if (kind_ == Kind::Udf3) {
            return std::max(0.0, amp * std::sin(2.0 * kPieces * pi * x1) - 2.0 * kPieces * std::fabs(G(p)));
        }
        if (kind_ == Kind::Udf6) {
            return amp * std::fabs(std::sin(2.0 * kPieces * pi * x1));
        }
        return 0.0;
    }

    // Base curve (without distance terms) at position x1.
    Objectives base(double x1, double p) const
    {
        const double ag = std::fabs(G(p));
        switch (kind_) {
        case Kind::Udf1:
        case Kind::Udf2:
            return {x1 + ag, 1.0 - x1 + ag};
        case Kind::Udf3:
            return {x1 + bump(x1, p), 1.0 - x1 + bump(x1, p)};
        case Kind::Udf4: {
            const double mh = 0.5 + ag;
            return {x1, 1.0 - mh * std::pow(x1, mh)};
        }
        case Kind::Udf5:
            return {x1, 1.0 - std::pow(x1, 0.5 + ag)};
        case Kind::Udf6:
            return {x1 + ag + bump(x1, p), 1.0 - x1 + ag + bump(x1, p)};
        }
        return {0.0, 0.0};
    }

    Objectives evaluate_phase(std::span<const double> x, double p) const override
    {
        const double x1 = x[0];
        double sum1 = 0.0;
        double sum2 = 0.0;
        double prod1 = 1.0;
        double prod2 = 1.0;
        std::size_t n1 = 0;
        std::size_t n2 = 0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            const std::size_t j = i + 1;
            const double y = x[i] - optimum(j, x1, p);
            double term = y * y;
            double factor = 1.0;
            if (kind_ == Kind::Udf3) {
                term = 4.0 * y * y;
                factor = std::cos(20.0 * y * pi / std::sqrt(static_cast<double>(j)));
            } else if (kind_ == Kind::Udf6) {
                term = 2.0 * y * y - std::cos(4.0 * pi * y) + 1.0;
            }
            if (j % 2 == 1) {
                sum1 += term;
                prod1 *= factor;
                ++n1;
            } else {
                sum2 += term;
                prod2 *= factor;
                ++n2;
            }
        }
        if (kind_ == Kind::Udf3) {
            sum1 = sum1 - 2.0 * prod1 + 2.0;
            sum2 = sum2 - 2.0 * prod2 + 2.0;
        }
        Objectives f = base(x1, p);
        f[0] += 2.0 * sum1 / static_cast<double>(n1);
        f[1] += 2.0 * sum2 / static_cast<double>(n2);
        return f;
    }

    std::vector<double> pareto_set_phase(double u, double p) const override
    {
        std::vector<double> x(dimension());
        x[0] = u;
        for (std::size_t i = 1; i < x.size(); ++i) {
            x[i] = optimum(i + 1, u, p);
        }
        return x;
    }

    Objectives front_phase(double u, double p) const override { return base(u, p); }

private:
    Kind kind_;
};

} // namespace

ProblemPtr make_udf(std::string_view name, std::size_t dimension, double time_period)
{
    const std::size_t d = dimension == 0 ? 30 : dimension;
    if (d < 3) {
        throw ConfigError(fmt::format("{} needs at least 3 variables (got {})", name, d));
    }
    struct Entry {
        std::string_view name;
        Kind kind;
        Category cat;
        bool connected;
        double lo;
        double hi;
    };
    static constexpr Entry table[] = {
        {"udf1", Kind::Udf1, Category::II, true, -2.0, 2.0},
        {"udf2", Kind::Udf2, Category::II, true, -1.0, 2.0},
        {"udf3", Kind::Udf3, Category::III, false, -1.0, 1.0},
        {"udf4", Kind::Udf4, Category::II, true, -1.0, 1.0},
        {"udf5", Kind::Udf5, Category::II, true, -1.0, 1.0},
        {"udf6", Kind::Udf6, Category::II, false, -2.0, 2.0},
    };
    for (const auto& e : table) {
        if (e.name == name) {
            return std::make_shared<Udf>(std::string(name), e.kind, e.cat, e.connected, udf_bounds(d, e.lo, e.hi), time_period);
        }
    }
    throw ConfigError(fmt::format("unknown problem '{}'", name));
}

} // namespace epimoea::detail
