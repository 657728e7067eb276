#include "epimoea/errors.hpp"
#include "epimoea/moead.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

using namespace epimoea;

namespace {

std::vector<Bounds> box(std::size_t d, double lo = -10.0, double hi = 10.0)
{
    return std::vector<Bounds>(d, Bounds{lo, hi});
}

std::set<std::vector<double>> genome_set(const AlgorithmState& s)
{
    std::set<std::vector<double>> out;
    for (const auto& sp : s.subproblems) {
        out.insert(sp.incumbent.genome);
    }
    return out;
}

} // namespace

TEST_CASE("weight vectors")
{
    auto w = generate_weight_vectors(3, 2);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == std::vector<double>{0.0, 1.0});
    CHECK(w[1] == std::vector<double>{0.5, 0.5});
    CHECK(w[2] == std::vector<double>{1.0, 0.0});

    w = generate_weight_vectors(2, 2);
    CHECK(w == std::vector<std::vector<double>>{{0.0, 1.0}, {1.0, 0.0}});

    w = generate_weight_vectors(5, 2);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(w[i][0] == doctest::Approx(0.25 * static_cast<double>(i)).epsilon(1e-15));
    }

    w = generate_weight_vectors(500, 2);
    std::set<std::vector<double>> distinct(w.begin(), w.end());
    CHECK(distinct.size() == 500);
    for (const auto& v : w) {
        CHECK(std::fabs(v[0] + v[1] - 1.0) <= 1e-12);
        CHECK(v[0] >= 0.0);
        CHECK(v[1] >= 0.0);
    }

    CHECK_THROWS_AS(generate_weight_vectors(10, 3), ConfigError);
}

TEST_CASE("neighborhoods")
{
    auto hoods = build_neighborhoods(generate_weight_vectors(3, 2), 3);
    for (const auto& h : hoods) {
        CHECK(std::set<std::size_t>(h.begin(), h.end()) == std::set<std::size_t>{0, 1, 2});
    }
    const auto w5 = generate_weight_vectors(5, 2);
    hoods = build_neighborhoods(w5, 2);
    CHECK(std::set<std::size_t>(hoods[0].begin(), hoods[0].end()) == std::set<std::size_t>{0, 1});
    hoods = build_neighborhoods(w5, 3);
    CHECK(std::set<std::size_t>(hoods[2].begin(), hoods[2].end()) == std::set<std::size_t>{1, 2, 3});

    SUBCASE("matches a brute-force sort with index tie-break")
    {
        const auto w = generate_weight_vectors(37, 2);
        const auto h = build_neighborhoods(w, 7);
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::vector<std::size_t> idx(w.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            auto dist = [&](std::size_t j) {
                return (w[i][0] - w[j][0]) * (w[i][0] - w[j][0]) + (w[i][1] - w[j][1]) * (w[i][1] - w[j][1]);
            };
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return dist(a) < dist(b); });
            idx.resize(7);
            CHECK(h[i].size() == 7);
            CHECK(std::find(h[i].begin(), h[i].end(), i) != h[i].end());
            CHECK(std::set<std::size_t>(h[i].begin(), h[i].end()) == std::set<std::size_t>(idx.begin(), idx.end()));
        }
    }
    CHECK_THROWS_AS(build_neighborhoods(w5, 6), ConfigError);
}

TEST_CASE("tchebycheff")
{
    const std::vector<double> z0{0.0, 0.0};
    CHECK(tchebycheff(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}, z0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tchebycheff(std::vector<double>{0.2, 0.8}, std::vector<double>{0.5, 0.5}, z0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(tchebycheff(std::vector<double>{1.0, 1.0}, std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 1.0}) == 0.0);
    // zero weight still counts through the guard
    CHECK(tchebycheff(std::vector<double>{0.0, 3.0}, std::vector<double>{1.0, 0.0}, z0) == doctest::Approx(3e-6));
    CHECK_THROWS_AS(tchebycheff(std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}, z0), DimensionError);
}

TEST_CASE("DE variation")
{
    Rng rng(3);
    DEParams p;
    const auto b = box(2);
    const std::vector<double> target{0, 0}, r1{1, 1}, r2{1, 0}, r3{0, 1};
    CHECK(de_variation(target, r1, r2, r3, p, b, rng) == std::vector<double>{1.5, 0.5});

    p.F = 0.0;
    CHECK(de_variation(target, r1, r2, r3, p, b, rng) == r1);

    p.F = 0.5;
    p.CR = 0.0;
    CHECK(de_variation(target, r1, r2, r3, p, b, rng) == target);

    SUBCASE("clipped to bounds")
    {
        DEParams q;
        q.F = 5.0;
        const auto unit = box(2, 0.0, 1.0);
        const auto c = de_variation(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0}, std::vector<double>{1, 0},
                                    std::vector<double>{0, 1}, q, unit, rng);
        CHECK(c == std::vector<double>{1.0, 0.0});
    }
}

TEST_CASE("polynomial mutation")
{
    Rng rng(11);
    const auto b = box(8, 0.0, 1.0);
    const std::vector<double> g{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    CHECK(polynomial_mutation(g, 0.0, 20.0, b, rng) == g);

    SUBCASE("stays inside the bounds")
    {
        for (int k = 0; k < 20000; ++k) {
            auto m = polynomial_mutation(std::vector<double>{0.0, 1.0, 0.0, 1.0, 0.5, 0.0, 1.0, 0.5}, 1.0, 20.0, b, rng);
            for (double v : m) {
                REQUIRE(v >= 0.0);
                REQUIRE(v <= 1.0);
            }
        }
    }

    SUBCASE("larger eta gives smaller steps")
    {
        const auto one = box(1, 0.0, 1.0);
        auto mean_step = [&](double eta) {
            double sum = 0.0;
            for (int k = 0; k < 100000; ++k) {
                sum += std::fabs(polynomial_mutation({0.5}, 1.0, eta, one, rng)[0] - 0.5);
            }
            return sum / 100000.0;
        };
        const double m20 = mean_step(20.0);
        const double m5 = mean_step(5.0);
        CHECK(m20 < m5);
        // for an interior gene the spread is about 1/(eta+2)
        CHECK(m20 == doctest::Approx(1.0 / 22.0).epsilon(0.1));
        CHECK(m5 == doctest::Approx(1.0 / 7.0).epsilon(0.1));
    }

    SUBCASE("skipped loci are untouched")
    {
        const std::vector<std::size_t> skip{0, 3, 7};
        for (int k = 0; k < 100; ++k) {
            auto m = polynomial_mutation(g, 1.0, 20.0, b, rng, skip);
            CHECK(m[0] == g[0]);
            CHECK(m[3] == g[3]);
            CHECK(m[7] == g[7]);
        }
    }
}

TEST_CASE("DE parameter validation")
{
    DEParams p;
    CHECK_NOTHROW(p.validate(100));
    CHECK(p.mutation_probability(10) == doctest::Approx(0.1));
    auto bad = p;
    bad.F = 0.0;
    CHECK_THROWS_AS(bad.validate(100), ConfigError);
    bad = p;
    bad.CR = 1.5;
    CHECK_THROWS_AS(bad.validate(100), ConfigError);
    bad = p;
    bad.delta = -0.1;
    CHECK_THROWS_AS(bad.validate(100), ConfigError);
    bad = p;
    bad.nr = 0;
    CHECK_THROWS_AS(bad.validate(100), ConfigError);
    bad = p;
    bad.T = 1;
    CHECK_THROWS_AS(bad.validate(100), ConfigError);
    CHECK_THROWS_AS(p.validate(10), ConfigError);
}

TEST_CASE("generation accounting and invariants")
{
    const auto fda1 = make_problem("fda1", 10);
    DEParams p;
    Rng rng(5);
    auto off = BlockingContext::disabled();

    SUBCASE("one generation at N = 500 costs 500 evaluations")
    {
        auto s = initialize_state(*fda1, 500, p, 0.0, rng);
        CHECK(s.evals == 500);
        evolve_generation(s, *fda1, off, p, 0.0, rng);
        CHECK(s.evals == 1000);
        CHECK(s.offspring_evals == 500);
        CHECK(s.generation == 1);
    }

    SUBCASE("ideal point, bounds and neighborhoods")
    {
        auto s = initialize_state(*fda1, 60, p, 0.0, rng);
        for (int g = 0; g < 15; ++g) {
            const double t = g < 8 ? 0.0 : 0.1;
            if (g == 8) {
                reinitialize_on_change(s, *fda1, t, 0.2, rng);
            }
            evolve_generation(s, *fda1, off, p, t, rng);
            for (const auto& sp : s.subproblems) {
                for (std::size_t j = 0; j < 2; ++j) {
                    REQUIRE(s.ideal_point[j] <= sp.incumbent.objectives[j]);
                }
                REQUIRE(sp.incumbent.genome.size() == 10);
                REQUIRE(sp.neighbors.size() == p.T);
                REQUIRE(std::find(sp.neighbors.begin(), sp.neighbors.end(), static_cast<std::size_t>(&sp - s.subproblems.data())) != sp.neighbors.end());
                for (std::size_t j = 0; j < 10; ++j) {
                    REQUIRE(sp.incumbent.genome[j] >= fda1->bounds()[j].lo);
                    REQUIRE(sp.incumbent.genome[j] <= fda1->bounds()[j].hi);
                }
                REQUIRE(sp.incumbent.objectives == fda1->evaluate(sp.incumbent.genome, t));
            }
        }
    }

    SUBCASE("each offspring replaces at most nr incumbents")
    {
        // An offspring is identified by its generation tag and genome; count how
        // many slots each distinct offspring occupies right after the generation.
        for (std::size_t nr : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
            DEParams q = p;
            q.nr = nr;
            auto s = initialize_state(*fda1, 40, q, 0.0, rng);
            for (int g = 0; g < 5; ++g) {
                evolve_generation(s, *fda1, off, q, 0.0, rng);
                std::map<std::vector<double>, std::size_t> placed;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (s.subproblems[i].incumbent.eval_generation == s.generation) {
                        ++placed[s.subproblems[i].incumbent.genome];
                    }
                }
                for (const auto& [genome, count] : placed) {
                    REQUIRE(count <= nr);
                }
            }
        }
    }
}

TEST_CASE("change response")
{
    const auto fda1 = make_problem("fda1", 10);
    DEParams p;
    Rng rng(9);

    SUBCASE("fraction 0.2 at N = 500 replaces exactly 100")
    {
        auto s = initialize_state(*fda1, 500, p, 0.0, rng);
        const auto before = s;
        reinitialize_on_change(s, *fda1, 0.1, 0.2, rng);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            changed += s.subproblems[i].incumbent.genome != before.subproblems[i].incumbent.genome;
            CHECK(s.subproblems[i].incumbent.objectives == fda1->evaluate(s.subproblems[i].incumbent.genome, 0.1));
        }
        CHECK(changed == 100);
        CHECK(s.evals == before.evals + 600);
    }

    SUBCASE("fraction 0 only re-evaluates")
    {
        auto s = initialize_state(*fda1, 50, p, 0.0, rng);
        const auto before = s;
        reinitialize_on_change(s, *fda1, 0.5, 0.0, rng);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s.subproblems[i].incumbent.genome == before.subproblems[i].incumbent.genome);
            CHECK(s.subproblems[i].incumbent.objectives == fda1->evaluate(s.subproblems[i].incumbent.genome, 0.5));
        }
        double z0 = 1e300;
        double z1 = 1e300;
        for (const auto& sp : s.subproblems) {
            z0 = std::min(z0, sp.incumbent.objectives[0]);
            z1 = std::min(z1, sp.incumbent.objectives[1]);
        }
        CHECK(s.ideal_point == std::vector<double>{z0, z1});
    }

    SUBCASE("fraction 1 replaces everyone")
    {
        auto s = initialize_state(*fda1, 50, p, 0.0, rng);
        const auto before = genome_set(s);
        reinitialize_on_change(s, *fda1, 0.5, 1.0, rng);
        for (const auto& g : genome_set(s)) {
            CHECK(before.count(g) == 0);
        }
    }

    CHECK_THROWS_AS(
        [&] {
            auto s = initialize_state(*fda1, 10, DEParams{.T = 5}, 0.0, rng);
            reinitialize_on_change(s, *fda1, 0.1, 1.5, rng);
        }(),
        ConfigError);
}

TEST_CASE("a blocking policy that never fires leaves the trajectory unchanged")
{
    const auto jy1 = make_problem("jy1", 10);
    DEParams p;
    p.T = 10;

    auto run = [&](BlockingContext blocking) {
        Rng rng(42);
        auto s = initialize_state(*jy1, 30, p, 0.0, rng);
        for (int g = 0; g < 20; ++g) {
            evolve_generation(s, *jy1, blocking, p, 0.1 * (g / 5), rng);
        }
        return s;
    };

    BlockingPolicy never = BlockingPolicy::for_variant(BlockingVariant::E);
    never.base_probability = 0.0;
    BlockingPolicy eip = BlockingPolicy::for_variant(BlockingVariant::EIP);
    eip.base_probability = 0.0;
    eip.max_probability = 0.0;

    const auto base = run(BlockingContext::disabled());
    const auto a = run(BlockingContext(never, 600, false, Rng::derive(42, 1)));
    const auto b = run(BlockingContext(eip, 600, false, Rng::derive(7, 1)));
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(a.subproblems[i].incumbent.genome == base.subproblems[i].incumbent.genome);
        CHECK(b.subproblems[i].incumbent.genome == base.subproblems[i].incumbent.genome);
    }
    CHECK(a.ideal_point == base.ideal_point);

    SUBCASE("an active policy does change it")
    {
        BlockingPolicy e = BlockingPolicy::for_variant(BlockingVariant::E);
        const auto c = run(BlockingContext(e, 600, false, Rng::derive(42, 1)));
        bool differs = false;
        for (std::size_t i = 0; i < base.size(); ++i) {
            differs = differs || c.subproblems[i].incumbent.genome != base.subproblems[i].incumbent.genome;
        }
        CHECK(differs);
    }
}

TEST_CASE("full blocking with shielded mutation produces no new genomes")
{
    const auto fda1 = make_problem("fda1", 10);
    DEParams p;
    p.T = 10;
    BlockingPolicy full = BlockingPolicy::for_variant(BlockingVariant::E);
    full.base_probability = 1.0;
    full.max_probability = 1.0;
    full.base_block_size = 10;
    full.shields_mutation = true;
    BlockingContext ctx(full, 1000, false, Rng::derive(3, 1));

    Rng rng(3);
    auto s = initialize_state(*fda1, 30, p, 0.0, rng);
    const auto start = genome_set(s);
    for (int g = 0; g < 10; ++g) {
        evolve_generation(s, *fda1, ctx, p, 0.0, rng);
        for (const auto& genome : genome_set(s)) {
            REQUIRE(start.count(genome) == 1);
        }
    }
}
