#include "epimoea/moead.hpp"

#include "epimoea/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

namespace epimoea {

void DEParams::validate(std::size_t N) const
{
    if (!(F > 0.0)) {
        throw ConfigError(fmt::format("F must be positive (got {})", F));
    }
    if (!(CR >= 0.0 && CR <= 1.0)) {
        throw ConfigError(fmt::format("CR must lie in [0, 1] (got {})", CR));
    }
    if (pm >= 0.0 && pm > 1.0) {
        throw ConfigError(fmt::format("pm must lie in [0, 1] (got {})", pm));
    }
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw ConfigError(fmt::format("delta must lie in [0, 1] (got {})", delta));
    }
    if (!(eta_m >= 0.0)) {
        throw ConfigError(fmt::format("eta_m must be non-negative (got {})", eta_m));
    }
    if (nr < 1) {
        throw ConfigError("nr must be at least 1");
    }
    if (T < 2 || T > N) {
        throw ConfigError(fmt::format("neighborhood size T must lie in [2, N={}] (got {})", N, T));
    }
}

std::vector<std::vector<double>> generate_weight_vectors(std::size_t N, std::size_t m)
{
    if (m != 2) {
        throw ConfigError(fmt::format("unsupported objective count {}: only bi-objective decomposition is implemented", m));
    }
    if (N < 2) {
        throw ConfigError(fmt::format("need at least 2 weight vectors (got {})", N));
    }
    std::vector<std::vector<double>> w;
    w.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(N - 1);
        w.push_back({a, 1.0 - a});
    }
    return w;
}

std::vector<std::vector<std::size_t>> build_neighborhoods(const std::vector<std::vector<double>>& weights, std::size_t T)
{
    if (T > weights.size()) {
        throw ConfigError(fmt::format("neighborhood size {} exceeds {} weight vectors", T, weights.size()));
    }
    std::vector<std::vector<std::size_t>> out(weights.size());
    std::vector<std::pair<double, std::size_t>> dist(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (std::size_t j = 0; j < weights.size(); ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < weights[i].size(); ++k) {
                const double diff = weights[i][k] - weights[j][k];
                d += diff * diff;
            }
            dist[j] = {d, j};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(T), dist.end());
        out[i].reserve(T);
        for (std::size_t k = 0; k < T; ++k) {
            out[i].push_back(dist[k].second);
        }
    }
    return out;
}

double tchebycheff(std::span<const double> objectives, std::span<const double> weight, std::span<const double> ideal)
{
    if (objectives.size() != weight.size() || objectives.size() != ideal.size()) {
        throw DimensionError(fmt::format("tchebycheff: lengths {}, {}, {} differ", objectives.size(), weight.size(), ideal.size()));
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < objectives.size(); ++j) {
        const double w = std::max(weight[j], 1e-6);
        worst = std::max(worst, w * std::fabs(objectives[j] - ideal[j]));
    }
    return worst;
}

std::vector<double> de_variation(std::span<const double> target, std::span<const double> r1, std::span<const double> r2,
                                 std::span<const double> r3, const DEParams& params, std::span<const Bounds> bounds, Rng& rng)
{
    const std::size_t d = target.size();
    if (r1.size() != d || r2.size() != d || r3.size() != d || bounds.size() != d) {
        throw DimensionError("de_variation: genome lengths differ");
    }
    std::vector<double> child(target.begin(), target.end());
    for (std::size_t j = 0; j < d; ++j) {
        // CR = 1 always crosses; skipping the draw keeps the stream aligned with that case.
        const bool cross = params.CR >= 1.0 || rng.uniform() < params.CR;
        if (cross) {
            child[j] = std::clamp(r1[j] + params.F * (r2[j] - r3[j]), bounds[j].lo, bounds[j].hi);
        }
    }
    return child;
}

std::vector<double> polynomial_mutation(std::vector<double> genome, double pm, double eta_m, std::span<const Bounds> bounds, Rng& rng,
                                        std::span<const std::size_t> skip)
{
    if (genome.size() != bounds.size()) {
        throw DimensionError("polynomial_mutation: genome and bounds lengths differ");
    }
    if (pm <= 0.0) {
        return genome;
    }
    const double mut_pow = 1.0 / (eta_m + 1.0);
    for (std::size_t j = 0; j < genome.size(); ++j) {
        if (rng.uniform() >= pm) {
            continue;
        }
        const double u = rng.uniform();
        if (std::find(skip.begin(), skip.end(), j) != skip.end()) {
            continue;
        }
        const double lo = bounds[j].lo;
        const double hi = bounds[j].hi;
        const double span = hi - lo;
        if (span <= 0.0) {
            continue;
        }
        const double y = genome[j];
        const double d1 = (y - lo) / span;
        const double d2 = (hi - y) / span;
        double dq;
        if (u < 0.5) {
            const double xy = 1.0 - d1;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
            dq = std::pow(val, mut_pow) - 1.0;
        } else {
            const double xy = 1.0 - d2;
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
            dq = 1.0 - std::pow(val, mut_pow);
        }
        genome[j] = std::clamp(y + dq * span, lo, hi);
    }
    return genome;
}

namespace {

std::vector<double> random_genome(std::span<const Bounds> bounds, Rng& rng)
{
    std::vector<double> x(bounds.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = rng.uniform(bounds[j].lo, bounds[j].hi);
    }
    return x;
}

void recompute_ideal(AlgorithmState& state)
{
    auto& z = state.ideal_point;
    std::fill(z.begin(), z.end(), std::numeric_limits<double>::infinity());
    for (const auto& sp : state.subproblems) {
        for (std::size_t j = 0; j < z.size(); ++j) {
            z[j] = std::min(z[j], sp.incumbent.objectives[j]);
        }
    }
}

// Three mutually distinct members of the pool.
std::array<std::size_t, 3> pick_three(std::span<const std::size_t> pool, Rng& rng)
{
    std::array<std::size_t, 3> out{};
    std::size_t got = 0;
    while (got < 3) {
        const std::size_t c = pool[rng.below(pool.size())];
        if (std::find(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(got), c) == out.begin() + static_cast<std::ptrdiff_t>(got)) {
            out[got++] = c;
        }
    }
    return out;
}

} // namespace

AlgorithmState initialize_state(const DynamicProblem& problem, std::size_t N, const DEParams& params, double t, Rng& rng)
{
    if (N < 3) {
        throw ConfigError(fmt::format("population must hold at least 3 subproblems (got {})", N));
    }
    params.validate(N);
    const auto weights = generate_weight_vectors(N, problem.objective_count());
    const auto hoods = build_neighborhoods(weights, params.T);
    AlgorithmState s;
    s.ideal_point.assign(problem.objective_count(), 0.0);
    s.subproblems.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        Individual ind;
        ind.genome = random_genome(problem.bounds(), rng);
        ind.objectives = problem.evaluate(ind.genome, t);
        ind.eval_generation = 0;
        s.subproblems.push_back(Subproblem{weights[i], hoods[i], std::move(ind)});
        ++s.evals;
    }
    recompute_ideal(s);
    return s;
}

void evolve_generation(AlgorithmState& state, const DynamicProblem& problem, BlockingContext& blocking, const DEParams& params, double t,
                       Rng& rng)
{
    const std::size_t n = state.size();
    const std::size_t d = problem.dimension();
    const auto bounds = problem.bounds();
    const double pm = params.mutation_probability(d);

    std::vector<std::size_t> everyone(n);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});

    for (std::size_t i = 0; i < n; ++i) {
        const bool local = rng.uniform() < params.delta;
        std::vector<std::size_t> pool = local ? state.subproblems[i].neighbors : everyone;
        if (pool.size() < 3) {
            pool = everyone;
        }
        const auto [a, b, c] = pick_three(pool, rng);

        const auto& parent = state.subproblems[i].incumbent.genome;
        auto child = de_variation(parent, state.subproblems[a].incumbent.genome, state.subproblems[b].incumbent.genome,
                                  state.subproblems[c].incumbent.genome, params, bounds, rng);

        const auto mask = blocking.draw(state.offspring_evals, d);
        child = apply_block(parent, std::move(child), mask);
        std::span<const std::size_t> shielded;
        if (mask && blocking.policy().shields_mutation) {
            shielded = mask->indices;
        }
        child = polynomial_mutation(std::move(child), pm, params.eta_m, bounds, rng, shielded);

        Individual offspring;
        offspring.objectives = problem.evaluate(child, t);
        offspring.genome = std::move(child);
        offspring.eval_generation = state.generation + 1;
        ++state.evals;
        ++state.offspring_evals;

        for (std::size_t j = 0; j < state.ideal_point.size(); ++j) {
            state.ideal_point[j] = std::min(state.ideal_point[j], offspring.objectives[j]);
        }

        rng.shuffle(std::span<std::size_t>(pool));
        std::size_t replaced = 0;
        for (std::size_t k : pool) {
            if (replaced >= params.nr) {
                break;
            }
            auto& sp = state.subproblems[k];
            if (tchebycheff(offspring.objectives, sp.weight, state.ideal_point) <= tchebycheff(sp.incumbent.objectives, sp.weight, state.ideal_point)) {
                sp.incumbent = offspring;
                ++replaced;
            }
        }
    }
    ++state.generation;
}

void reinitialize_on_change(AlgorithmState& state, const DynamicProblem& problem, double t_new, double fraction, Rng& rng)
{
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ConfigError(fmt::format("reinitialization fraction must lie in [0, 1] (got {})", fraction));
    }
    const std::size_t n = state.size();
    for (auto& sp : state.subproblems) {
        sp.incumbent.objectives = problem.evaluate(sp.incumbent.genome, t_new);
        sp.incumbent.eval_generation = state.generation;
        ++state.evals;
    }
    const auto fresh = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // uniform subset of size `fresh` via partial Fisher-Yates
    for (std::size_t k = 0; k < fresh; ++k) {
        std::swap(order[k], order[k + rng.below(n - k)]);
    }
    for (std::size_t k = 0; k < fresh; ++k) {
        auto& ind = state.subproblems[order[k]].incumbent;
        ind.genome = random_genome(problem.bounds(), rng);
        ind.objectives = problem.evaluate(ind.genome, t_new);
        ind.eval_generation = state.generation;
        ++state.evals;
    }
    recompute_ideal(state);
}

std::vector<Objectives> population_objectives(const AlgorithmState& state)
{
    std::vector<Objectives> out;
    out.reserve(state.size());
    for (const auto& sp : state.subproblems) {
        out.push_back(sp.incumbent.objectives);
    }
    return out;
}

} // namespace epimoea
