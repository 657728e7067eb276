#pragma once

#include "epimoea/epigenetics.hpp"
#include "epimoea/problems.hpp"
#include "epimoea/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace epimoea {

/// MOEA/D-DE variation and replacement settings.
struct DEParams {
    double F = 0.5;       ///< DE scaling factor
    double CR = 1.0;      ///< DE crossover rate
    double pm = -1.0;     ///< per-gene mutation probability; negative means 1/D
    double eta_m = 20.0;  ///< polynomial mutation distribution index
    double delta = 0.9;   ///< probability that the mating pool is the neighborhood
    std::size_t nr = 2;   ///< max incumbents replaced per offspring
    std::size_t T = 20;   ///< neighborhood size

    double mutation_probability(std::size_t dimension) const
    {
        return pm < 0.0 ? 1.0 / static_cast<double>(dimension) : pm;
    }

    /// Throws ConfigError unless the invariants hold for population size N.
    void validate(std::size_t N) const;
};

struct Individual {
    std::vector<double> genome;
    Objectives objectives;
    std::size_t eval_generation = 0;
};

struct Subproblem {
    std::vector<double> weight;
    std::vector<std::size_t> neighbors;
    Individual incumbent;
};

struct AlgorithmState {
    std::vector<Subproblem> subproblems;
    std::vector<double> ideal_point;
    std::uint64_t evals = 0;            ///< every objective evaluation, including re-evaluations
    std::uint64_t offspring_evals = 0;  ///< evaluations of offspring only; drives blocking schedules
    std::size_t generation = 0;         ///< completed generations

    std::size_t size() const { return subproblems.size(); }
};

/// N weight vectors evenly spaced on the 2-simplex, ordered by first component.
std::vector<std::vector<double>> generate_weight_vectors(std::size_t N, std::size_t m);

/// The T nearest weight vectors (Euclidean) of each vector, self included,
/// ties broken by lower index.
std::vector<std::vector<std::size_t>> build_neighborhoods(const std::vector<std::vector<double>>& weights, std::size_t T);

/// Weighted Tchebycheff aggregation; weights below 1e-6 count as 1e-6.
double tchebycheff(std::span<const double> objectives, std::span<const double> weight, std::span<const double> ideal);

/// DE/rand/1 with binomial crossover against `target`, clipped to bounds.
std::vector<double> de_variation(std::span<const double> target, std::span<const double> r1, std::span<const double> r2,
                                 std::span<const double> r3, const DEParams& params, std::span<const Bounds> bounds, Rng& rng);

/// Bounded polynomial mutation. Loci listed in `skip` are left untouched.
std::vector<double> polynomial_mutation(std::vector<double> genome, double pm, double eta_m, std::span<const Bounds> bounds, Rng& rng,
                                        std::span<const std::size_t> skip = {});

/// Uniform random population evaluated at time t; evals = N.
AlgorithmState initialize_state(const DynamicProblem& problem, std::size_t N, const DEParams& params, double t, Rng& rng);

/// One MOEA/D-DE generation at time t with the blocking hook applied after
/// DE variation and before mutation.
void evolve_generation(AlgorithmState& state, const DynamicProblem& problem, BlockingContext& blocking, const DEParams& params, double t,
                       Rng& rng);

/// Change response: re-evaluates every incumbent at t_new, replaces a random
/// `fraction` of them (rounded to nearest) with fresh uniform individuals and
/// recomputes the ideal point.
void reinitialize_on_change(AlgorithmState& state, const DynamicProblem& problem, double t_new, double fraction, Rng& rng);

/// Objective vectors of all incumbents, in subproblem order.
std::vector<Objectives> population_objectives(const AlgorithmState& state);

} // namespace epimoea
