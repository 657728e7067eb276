// FDA1-FDA3 (Farina, Deb and Amato). FDA2 uses the corrected form of Deb,
// Rao and Karthik, whose Pareto set is interior to the box.

#include "epimoea/errors.hpp"
#include "epimoea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace epimoea::detail {
namespace {

using std::numbers::pi;

std::vector<Bounds> zdt_bounds(std::size_t d)
{
    std::vector<Bounds> b(d, Bounds{-1.0, 1.0});
    b[0] = Bounds{0.0, 1.0};
    return b;
}

class Fda1 final : public DynamicProblem {
public:
    Fda1(std::size_t d, double period) : DynamicProblem("fda1", zdt_bounds(d), Category::I, true, period) {}

protected:
    static double G(double p) { return std::sin(0.5 * pi * p); }

    Objectives evaluate_phase(std::span<const double> x, double p) const override
    {
        const double gt = G(p);
        double g = 1.0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            g += (x[i] - gt) * (x[i] - gt);
        }
        const double f1 = x[0];
        return {f1, g * (1.0 - std::sqrt(f1 / g))};
    }

    std::vector<double> pareto_set_phase(double u, double p) const override
    {
        std::vector<double> x(dimension(), G(p));
        x[0] = u * u;
        return x;
    }

    Objectives front_phase(double u, double) const override { return {u * u, 1.0 - u}; }
};

class Fda2 final : public DynamicProblem {
public:
    Fda2(std::size_t d, double period)
        : DynamicProblem("fda2", zdt_bounds(d), Category::II, true, period)
        , split_(1 + std::max<std::size_t>(1, (d - 1) / 2 - 1))
    {
    }

protected:
    static double H(double p) { return 2.0 * std::sin(0.5 * pi * (p - 1.0)); }

    Objectives evaluate_phase(std::span<const double> x, double p) const override
    {
        const double h = H(p);
        double g = 1.0;
        for (std::size_t i = 1; i < split_; ++i) {
            g += x[i] * x[i];
        }
        double expo = h;
        for (std::size_t i = split_; i < x.size(); ++i) {
            expo += (x[i] - 0.25 * h) * (x[i] - 0.25 * h);
        }
        const double f1 = x[0];
        return {f1, g * (1.0 - std::pow(f1 / g, std::exp2(expo)))};
    }

    std::vector<double> pareto_set_phase(double u, double p) const override
    {
        std::vector<double> x(dimension(), 0.0);
        x[0] = u;
        for (std::size_t i = split_; i < x.size(); ++i) {
            x[i] = 0.25 * H(p);
        }
        return x;
    }

    Objectives front_phase(double u, double p) const override { return {u, 1.0 - std::pow(u, std::exp2(H(p)))}; }

private:
    std::size_t split_;  // x[1, split_) is the distance block, x[split_, D) the shape block
};

class Fda3 final : public DynamicProblem {
public:
    Fda3(std::size_t d, double period) : DynamicProblem("fda3", zdt_bounds(d), Category::II, true, period) {}

protected:
    static double F(double p) { return std::pow(10.0, 2.0 * std::sin(0.5 * pi * p)); }
    static double G(double p) { return std::fabs(std::sin(0.5 * pi * p)); }

    Objectives evaluate_phase(std::span<const double> x, double p) const override
    {
        const double gt = G(p);
        double g = 1.0 + gt;
        for (std::size_t i = 1; i < x.size(); ++i) {
            g += (x[i] - gt) * (x[i] - gt);
        }
        const double f1 = std::pow(x[0], F(p));
        return {f1, g * (1.0 - std::sqrt(f1 / g))};
    }

    std::vector<double> pareto_set_phase(double u, double p) const override
    {
        std::vector<double> x(dimension(), G(p));
        x[0] = u == 0.0 ? 0.0 : std::pow(u, 2.0 / F(p));
        return x;
    }

    Objectives front_phase(double u, double p) const override
    {
        const double g = 1.0 + G(p);
        return {u * u, g - u * std::sqrt(g)};
    }
};

} // namespace

ProblemPtr make_fda(std::string_view name, std::size_t dimension, double time_period)
{
    const std::size_t d = dimension == 0 ? 30 : dimension;
    if (d < 3) {
        throw ConfigError(fmt::format("{} needs at least 3 variables (got {})", name, d));
    }
    if (name == "fda1") {
        return std::make_shared<Fda1>(d, time_period);
    }
    if (name == "fda2") {
        return std::make_shared<Fda2>(d, time_period);
    }
    return std::make_shared<Fda3>(d, time_period);
}

} // namespace epimoea::detail
