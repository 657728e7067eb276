#include "epimoea/problems.hpp"

#include "epimoea/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <fmt/format.h>

namespace epimoea {

std::string_view to_string(Category c)
{
    switch (c) {
    case Category::I:
        return "I";
    case Category::II:
        return "II";
    case Category::III:
        return "III";
    }
    return "?";
}

void TimeModel::validate() const
{
    if (tau_t < 1 || n_t < 1) {
        throw ConfigError(fmt::format("time model needs tau_t >= 1 and n_t >= 1 (got {}, {})", tau_t, n_t));
    }
}

std::size_t time_step_of_generation(std::size_t generation, const TimeModel& tm)
{
    return generation / static_cast<std::size_t>(tm.tau_t);
}

double time_of_generation(std::size_t generation, const TimeModel& tm)
{
    return static_cast<double>(time_step_of_generation(generation, tm)) / static_cast<double>(tm.n_t);
}

DynamicProblem::DynamicProblem(std::string name, std::vector<Bounds> bounds, Category category, bool connected, double time_period)
    : name_(std::move(name))
    , bounds_(std::move(bounds))
    , category_(category)
    , connected_(connected)
    , time_period_(time_period)
{
    if (time_period_ < 0.0 || !std::isfinite(time_period_)) {
        throw ConfigError(fmt::format("time period must be finite and >= 0 (got {})", time_period_));
    }
}

double DynamicProblem::phase(double t) const
{
    if (time_period_ == 0.0) {
        return t;
    }
    double p = t - time_period_ * std::floor(t / time_period_);
    p = std::round(p * 1e9) / 1e9;
    return p >= time_period_ ? 0.0 : p;
}

Objectives DynamicProblem::evaluate(std::span<const double> x, double t) const
{
    if (x.size() != bounds_.size()) {
        throw DimensionError(fmt::format("{}: genome has {} variables, expected {}", name_, x.size(), bounds_.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= bounds_[i].lo && x[i] <= bounds_[i].hi)) {
            throw DomainError(fmt::format("{}: x[{}] = {} outside [{}, {}]", name_, i, x[i], bounds_[i].lo, bounds_[i].hi));
        }
    }
    return evaluate_phase(x, phase(t));
}

std::vector<double> DynamicProblem::pareto_set_point(double u, double t) const
{
    return pareto_set_phase(std::clamp(u, 0.0, 1.0), phase(t));
}

Objectives DynamicProblem::front_point(double u, double t) const
{
    return front_phase(std::clamp(u, 0.0, 1.0), phase(t));
}

namespace {

// Keeps the non-dominated points of a bi-objective set, sorted by f1.
Front nondominated_sweep(Front pts)
{
    std::sort(pts.begin(), pts.end(), [](const Objectives& a, const Objectives& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    Front out;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (auto& p : pts) {
        if (p[1] < best_f2) {
            best_f2 = p[1];
            out.push_back(std::move(p));
        }
    }
    return out;
}

} // namespace

Front DynamicProblem::pareto_front(double t, std::size_t n_points) const
{
    if (n_points < 2) {
        throw ConfigError("pareto_front needs at least 2 points");
    }
    const double p = phase(t);
    if (connected_) {
        Front out;
        out.reserve(n_points);
        for (std::size_t k = 0; k < n_points; ++k) {
            out.push_back(front_phase(static_cast<double>(k) / static_cast<double>(n_points - 1), p));
        }
        return nondominated_sweep(std::move(out));
    }

    const std::size_t dense = std::max<std::size_t>(20 * n_points, 20000);
    Front cloud;
    cloud.reserve(dense + 1);
    for (std::size_t k = 0; k <= dense; ++k) {
        cloud.push_back(front_phase(static_cast<double>(k) / static_cast<double>(dense), p));
    }
    Front filtered = nondominated_sweep(std::move(cloud));
    if (filtered.size() <= n_points) {
        return filtered;
    }
    Front out;
    out.reserve(n_points);
    const double stride = static_cast<double>(filtered.size() - 1) / static_cast<double>(n_points - 1);
    for (std::size_t k = 0; k < n_points; ++k) {
        out.push_back(filtered[static_cast<std::size_t>(std::llround(stride * static_cast<double>(k)))]);
    }
    return out;
}

const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names = {
        "fda1", "fda2", "fda3",
        "jy1", "jy2", "jy3", "jy5", "jy6", "jy7", "jy8",
        "udf1", "udf2", "udf3", "udf4", "udf5", "udf6",
    };
    return names;
}

ProblemPtr make_problem(std::string_view name, std::size_t dimension, double time_period)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (std::find(catalog_names().begin(), catalog_names().end(), lower) == catalog_names().end()) {
        throw ConfigError(fmt::format("unknown problem '{}'", name));
    }
    if (lower.starts_with("fda")) {
        return detail::make_fda(lower, dimension, time_period);
    }
    if (lower.starts_with("jy")) {
        return detail::make_jy(lower, dimension, time_period);
    }
    return detail::make_udf(lower, dimension, time_period);
}

std::vector<ProblemPtr> suite_catalog(std::size_t dimension, double time_period)
{
    std::vector<ProblemPtr> out;
    for (const auto& n : catalog_names()) {
        out.push_back(make_problem(n, dimension, time_period));
    }
    return out;
}

} // namespace epimoea
