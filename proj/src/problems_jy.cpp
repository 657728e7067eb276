// JY1-JY3 and JY5-JY8 (Jiang and Yang). All share
//   f1 = (1 + g) * (x1 + A sin(W pi x1))^alpha
//   f2 = (1 + g) * (1 - x1 + A sin(W pi x1))^beta
// with per-problem A(t), W(t), alpha(t), beta(t) and distance function g.

#include "epimoea/errors.hpp"
#include "epimoea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace epimoea::detail {
namespace {

using std::numbers::pi;

std::vector<Bounds> jy_bounds(std::size_t d)
{
    std::vector<Bounds> b(d, Bounds{-1.0, 1.0});
    b[0] = Bounds{0.0, 1.0};
    return b;
}

double G(double p) { return std::sin(0.5 * pi * p); }

// Time-varying frequency used by JY2 and JY3.
double switching_w(double p) { return std::floor(6.0 * std::sin(0.5 * pi * (p - 1.0))); }

struct Shape {
    double A = 0.05;
    double W = 6.0;
    double alpha = 1.0;
    double beta = 1.0;
};

Objectives shaped(double pos, double g, const Shape& s)
{
    const double wave = s.A * std::sin(s.W * pi * pos);
    // both terms are non-negative on [0, 1]; the clamp absorbs rounding at the
    // ends, where sin(W pi) is a tiny negative number instead of 0
    double a = std::max(0.0, pos + wave);
    double b = std::max(0.0, 1.0 - pos + wave);
    if (s.alpha != 1.0) {
        a = std::pow(a, s.alpha);
    }
    if (s.beta != 1.0) {
        b = std::pow(b, s.beta);
    }
    return {(1.0 + g) * a, (1.0 + g) * b};
}

enum class Kind { Jy1, Jy2, Jy3, Jy5, Jy6, Jy7, Jy8 };

class Jy final : public DynamicProblem {
public:
    Jy(std::string name, Kind kind, Category cat, std::size_t d, double period)
        : DynamicProblem(std::move(name), jy_bounds(d), cat, true, period)
        , kind_(kind)
    {
    }

protected:
    Shape shape(double p) const
    {
        switch (kind_) {
        case Kind::Jy1:
            return {0.05, 6.0, 1.0, 1.0};
        case Kind::Jy2:
        case Kind::Jy3:
            return {0.05, switching_w(p), 1.0, 1.0};
        case Kind::Jy5:
            return {0.3 * std::sin(0.5 * pi * (p - 1.0)), 1.0, 1.0, 1.0};
        case Kind::Jy6:
            return {0.1, 3.0, 1.0, 1.0};
        case Kind::Jy7: {
            const double e = 0.2 + 2.8 * std::fabs(G(p));
            return {0.1, 3.0, e, e};
        }
        case Kind::Jy8: {
            const double beta = 10.0 - 9.8 * std::fabs(G(p));
            return {0.05, 6.0, 2.0 / beta, beta};
        }
        }
        return {};
    }

    // Optimal value of every distance variable (JY3 handled separately).
    double target(double p) const
    {
        switch (kind_) {
        case Kind::Jy5:
        case Kind::Jy8:
            return 0.0;
        default:
            return G(p);
        }
    }

    static int jy3_alpha(double p)
    {
        const double s = std::sin(0.5 * pi * p);
        return static_cast<int>(std::floor(100.0 * s * s));
    }

    static double jy3_position(double x1, int alpha)
    {
        return std::fabs(x1 * std::sin((2.0 * alpha + 0.5) * pi * x1));
    }

    Objectives evaluate_phase(std::span<const double> x, double p) const override
    {
        const Shape s = shape(p);
        double g = 0.0;
        switch (kind_) {
        case Kind::Jy3: {
            const double y1 = jy3_position(x[0], jy3_alpha(p));
            double prev = y1;
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double d = x[i] * x[i] - prev;
                g += d * d;
                prev = x[i];
            }
            return shaped(y1, g, s);
        }
        case Kind::Jy6: {
            const double gt = G(p);
            const double k = 2.0 * std::floor(10.0 * std::fabs(gt));
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double y = x[i] - gt;
                g += 4.0 * y * y - std::cos(k * pi * y) + 1.0;
            }
            break;
        }
        case Kind::Jy7: {
            const double gt = G(p);
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double y = x[i] - gt;
                g += y * y - 10.0 * std::cos(2.0 * pi * y) + 10.0;
            }
            break;
        }
        default: {
            const double gt = target(p);
            for (std::size_t i = 1; i < x.size(); ++i) {
                g += (x[i] - gt) * (x[i] - gt);
            }
            break;
        }
        }
        return shaped(x[0], g, s);
    }

    std::vector<double> pareto_set_phase(double u, double p) const override
    {
        std::vector<double> x(dimension(), target(p));
        if (kind_ != Kind::Jy3) {
            x[0] = u;
            return x;
        }
        // On the last hump [2a/(2a+0.5), 1] the position is increasing from 0 to 1.
        const int alpha = jy3_alpha(p);
        double lo = 2.0 * alpha / (2.0 * alpha + 0.5);
        double hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) {
                break;
            }
            (jy3_position(mid, alpha) < u ? lo : hi) = mid;
        }
        x[0] = std::fabs(jy3_position(lo, alpha) - u) <= std::fabs(jy3_position(hi, alpha) - u) ? lo : hi;
        double prev = jy3_position(x[0], alpha);
        for (std::size_t i = 1; i < x.size(); ++i) {
            x[i] = std::sqrt(prev);
            prev = x[i];
        }
        return x;
    }

    Objectives front_phase(double u, double p) const override { return shaped(u, 0.0, shape(p)); }

private:
    Kind kind_;
};

} // namespace

ProblemPtr make_jy(std::string_view name, std::size_t dimension, double time_period)
{
    const std::size_t d = dimension == 0 ? 10 : dimension;
    if (d < 2) {
        throw ConfigError(fmt::format("{} needs at least 2 variables (got {})", name, d));
    }
    struct Entry {
        std::string_view name;
        Kind kind;
        Category cat;
    };
    static constexpr Entry table[] = {
        {"jy1", Kind::Jy1, Category::I},
        {"jy2", Kind::Jy2, Category::II},
        {"jy3", Kind::Jy3, Category::II},
        {"jy5", Kind::Jy5, Category::III},
        {"jy6", Kind::Jy6, Category::I},
        {"jy7", Kind::Jy7, Category::II},
        {"jy8", Kind::Jy8, Category::III},
    };
    for (const auto& e : table) {
        if (e.name == name) {
            return std::make_shared<Jy>(std::string(name), e.kind, e.cat, d, time_period);
        }
    }
    throw ConfigError(fmt::format("unknown problem '{}'", name));
}

} // namespace epimoea::detail
