#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace epimoea {

/// Dynamic problem classes: I = Pareto set moves, front fixed; II = both move;
/// III = front moves, Pareto set fixed.
enum class Category { I, II, III };

std::string_view to_string(Category c);

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;
};

/// Discrete time of the FDA family: t = floor(gen / tau_t) / n_t.
struct TimeModel {
    int tau_t = 5;  ///< generations per time step (frequency of change)
    int n_t = 10;   ///< time steps per unit time (severity)

    void validate() const;
};

double time_of_generation(std::size_t generation, const TimeModel& tm);

/// Index of the discrete time step a generation falls in.
std::size_t time_step_of_generation(std::size_t generation, const TimeModel& tm);

using Objectives = std::vector<double>;
using Front = std::vector<Objectives>;

/// A bi-objective dynamic benchmark f(x, t).
///
/// Every problem's time dependence is evaluated at the phase of `t` within a
/// repeating window of `time_period` time units (2.0 by default, which is 100
/// generations at tau_t = 5, n_t = 10). A period of 0 evaluates the raw `t`.
/// Instances are immutable and safe to share between threads.
class DynamicProblem {
public:
    virtual ~DynamicProblem() = default;

    const std::string& name() const { return name_; }
    std::size_t dimension() const { return bounds_.size(); }
    std::size_t objective_count() const { return 2; }
    std::span<const Bounds> bounds() const { return bounds_; }
    Category category() const { return category_; }
    double time_period() const { return time_period_; }

    /// Phase of t inside the repeating window, snapped to a 1e-9 grid so that
    /// t and t + period map to the same double.
    double phase(double t) const;

    /// Objective vector at time t. Throws DomainError for out-of-bounds input
    /// and DimensionError for a wrong-length genome.
    Objectives evaluate(std::span<const double> x, double t) const;

    /// `n_points` samples of the analytic Pareto front at time t, mutually
    /// non-dominated and ordered by increasing f1. Fronts made of isolated
    /// pieces may return fewer points when the front itself has fewer.
    Front pareto_front(double t, std::size_t n_points) const;

    /// A Pareto-optimal decision vector at time t; `u` in [0, 1] is the same
    /// front parameter used by `front_point`.
    std::vector<double> pareto_set_point(double u, double t) const;

    /// Closed-form front point for parameter `u` in [0, 1] (may be dominated
    /// when the front is disconnected).
    Objectives front_point(double u, double t) const;

    /// True when every front_point is non-dominated, so even parameter
    /// sampling needs no filtering.
    bool front_is_connected() const { return connected_; }

protected:
    DynamicProblem(std::string name, std::vector<Bounds> bounds, Category category, bool connected, double time_period);

    virtual Objectives evaluate_phase(std::span<const double> x, double p) const = 0;
    virtual std::vector<double> pareto_set_phase(double u, double p) const = 0;
    virtual Objectives front_phase(double u, double p) const = 0;

private:
    std::string name_;
    std::vector<Bounds> bounds_;
    Category category_;
    bool connected_;
    double time_period_;
};

using ProblemPtr = std::shared_ptr<const DynamicProblem>;

/// Default time period shared by the catalog.
inline constexpr double kDefaultTimePeriod = 2.0;

/// Builds a catalog problem by lower-case name ("fda1", "jy5", "udf3").
/// `dimension` 0 selects the problem's default. Throws ConfigError for
/// unknown names or unusable dimensions.
ProblemPtr make_problem(std::string_view name, std::size_t dimension = 0, double time_period = kDefaultTimePeriod);

/// Names of the 16 catalog problems in report order.
const std::vector<std::string>& catalog_names();

std::vector<ProblemPtr> suite_catalog(std::size_t dimension = 0, double time_period = kDefaultTimePeriod);

namespace detail {
ProblemPtr make_fda(std::string_view name, std::size_t dimension, double time_period);
ProblemPtr make_jy(std::string_view name, std::size_t dimension, double time_period);
ProblemPtr make_udf(std::string_view name, std::size_t dimension, double time_period);
} // namespace detail

} // namespace epimoea
