#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "sparsecol/harness.hpp"
#include "sparsecol/strong_edge.hpp"

using namespace sparsecol;
using namespace sparsecol::harness;
using R = bounds::Rational;

namespace {

R keep_exact(int k, int d)
{
    R base = R(2 * k - 1, 2 * k);
    R out = 1;
    for (int i = 0; i < d; ++i) out *= base;
    return out;
}

}  // namespace

TEST_CASE("outcome count and guard")
{
    const Graph k3 = gen::complete(3);
    CHECK(outcome_count(k3, CorrespondenceAssignment::identity(k3, 2)) == 64);
    const Graph big = gen::complete(8);
    CHECK(outcome_count(big, CorrespondenceAssignment::identity(big, 3)) == 6561ull << 28);
    try {
        enumerate_outcomes(big, CorrespondenceAssignment::identity(big, 3));
        FAIL("guard not enforced");
    } catch (const std::length_error& ex) {
        CHECK(std::string(ex.what()).find(std::to_string(6561ull << 28)) != std::string::npos);
    }
}

TEST_CASE("exact keep probabilities (brute force in Python agrees)")
{
    struct Case {
        Graph g;
        int k;
        R expected;
    };
    const std::vector<Case> cases{{gen::complete(2), 1, R(1, 2)},
                                  {gen::complete(3), 2, R(9, 16)},
                                  {gen::complete(3), 3, R(25, 36)},
                                  {gen::cycle(4), 2, R(9, 16)}};
    for (const Case& c : cases) {
        const EnumerationResult r = enumerate_outcomes(c.g, CorrespondenceAssignment::identity(c.g, c.k));
        for (const R& p : r.keep_probability) CHECK(p == c.expected);
        CHECK(r.stats_agree);
        CHECK(r.col_dist_dominates);
        CHECK(r.greedy_completion_ok);
        CHECK(r.always_valid);
    }
}

TEST_CASE("expected P, T and N on stars")
{
    const Graph s2 = gen::star(2);
    const EnumerationResult a = enumerate_outcomes(s2, CorrespondenceAssignment::identity(s2, 2));
    CHECK(a.outcomes == 32);
    CHECK(a.keep_probability == std::vector<R>{R(9, 16), R(3, 4), R(3, 4)});
    CHECK(a.expected_p[0] == R(5, 16));
    CHECK(a.expected_t[0] == 0);
    REQUIRE(a.pairs.size() == 4);
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        const auto [u, v] = a.pairs[i];
        CHECK(a.expected_pair_uncoloured[i] == (u == 0 && v == 0 ? R(1, 2) : R(7, 16)));
    }

    const Graph s3 = gen::star(3);
    const EnumerationResult b = enumerate_outcomes(s3, CorrespondenceAssignment::identity(s3, 2));
    CHECK(b.outcomes == 128);
    CHECK(b.keep_probability[0] == R(27, 64));
    CHECK(b.expected_p[0] == R(15, 16));
    CHECK(b.expected_t[0] == R(9, 64));
}

TEST_CASE("keep probability is degree-local for any total assignment")
{
    std::mt19937_64 rng(17);
    int instances = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = fixtures::random_small_graph(rng, 4);
        const int k = std::uniform_int_distribution<int>(1, 3)(rng);
        if (outcome_count(g, CorrespondenceAssignment::identity(g, k)) > 200000) continue;
        const auto c = totalize(fixtures::random_assignment(g, rng, k, k, k + 2));
        const EnumerationResult r = enumerate_outcomes(g, c);
        for (Vertex u = 0; u < g.size(); ++u)
            CHECK(r.keep_probability[static_cast<std::size_t>(u)] == keep_exact(k, g.degree(u)));
        CHECK(r.stats_agree);
        CHECK(r.col_dist_dominates);
        CHECK(r.greedy_completion_ok);
        CHECK(r.always_valid);
        ++instances;
    }
    CHECK(instances > 20);
}

TEST_CASE("Monte Carlo")
{
    const Graph e = gen::empty(4);
    MonteCarloOptions o;
    o.trials = 200;
    const MonteCarloReport r = monte_carlo_round(e, CorrespondenceAssignment::identity(e, 2), o);
    for (double m : r.keep_mean) CHECK(m == 1.0);

    const Graph g = gen::random_regular(60, 8, 2);
    const auto c = CorrespondenceAssignment::identity(g, 6);
    o.trials = 3000;
    o.seed = 5;
    o.collect_pairs = true;
    const MonteCarloReport one = monte_carlo_round(g, c, o);
    o.threads = 3;
    const MonteCarloReport three = monte_carlo_round(g, c, o);
    CHECK(one.keep_mean == three.keep_mean);
    CHECK(one.p_se == three.p_se);
    CHECK(one.pair_mean == three.pair_mean);
    CHECK(one.pooled_keep_mean == three.pooled_keep_mean);
    CHECK(one.always_valid);
    const double expected = keep_probability(6, 8);
    CHECK(std::abs(one.pooled_keep_mean - expected) < 4 * one.pooled_keep_se + 1e-12);
    CHECK_THROWS(monte_carlo_round(g, c, MonteCarloOptions{0, 1, 1, false}));
}

TEST_CASE("residual sparsity experiment")
{
    const Graph p = gen::petersen();
    const SparsityExperimentReport tf = residual_sparsity_experiment(p, CorrespondenceAssignment::identity(p, 2), 2, 40, 3);
    CHECK(tf.initial_delta == 1.0);
    for (const auto& r : tf.rounds)
        if (r.samples > 0) {
            CHECK(r.min_delta == 1.0);
            CHECK(r.max_delta == 1.0);
        }

    const Graph k = gen::complete(7);
    const SparsityExperimentReport kn = residual_sparsity_experiment(k, CorrespondenceAssignment::identity(k, 4), 3, 40, 3);
    CHECK(kn.initial_delta == 0.0);
    for (const auto& r : kn.rounds)
        if (r.samples > 0) CHECK(r.max_delta == 0.0);

    const Graph b = c5_blowup(4);
    const auto cb = CorrespondenceAssignment::identity(b, 6);
    const SparsityExperimentReport x = residual_sparsity_experiment(b, cb, 3, 30, 8, 1);
    const SparsityExperimentReport y = residual_sparsity_experiment(b, cb, 3, 30, 8, 4);
    REQUIRE(x.rounds.size() == 3);
    CHECK(x.rounds[0].samples > 0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(x.rounds[i].samples == y.rounds[i].samples);
        CHECK((x.rounds[i].mean_delta == y.rounds[i].mean_delta ||
               (std::isnan(x.rounds[i].mean_delta) && std::isnan(y.rounds[i].mean_delta))));
        CHECK(x.rounds[i].mean_worst_deviation == y.rounds[i].mean_worst_deviation);
    }
}

TEST_CASE("exact chromatic number")
{
    CHECK(exact_chromatic(gen::empty(0)) == 0);
    CHECK(exact_chromatic(gen::empty(3)) == 1);
    CHECK(exact_chromatic(gen::cycle(5)) == 3);
    CHECK(exact_chromatic(gen::petersen()) == 3);
    CHECK(exact_chromatic(fixtures::complete_bipartite(3, 3)) == 2);
    CHECK(exact_chromatic(fixtures::wheel6()) == 4);
    CHECK(exact_chromatic(fixtures::cycle7_complement()) == 4);
    CHECK(exact_chromatic(gen::complete(6)) == 6);
    CHECK_THROWS_AS(exact_chromatic(gen::empty(21)), std::length_error);
}

TEST_CASE("exact correspondence colouring")
{
    const Graph k3 = gen::complete(3);
    CHECK_FALSE(exact_correspondence_colouring(k3, CorrespondenceAssignment::from_lists(k3, {{1, 2}, {1, 2}, {1, 2}})));
    const auto c = CorrespondenceAssignment::from_lists(k3, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    const auto f = exact_correspondence_colouring(k3, c);
    REQUIRE(f);
    CHECK(is_valid_colouring(k3, c, *f));

    // C4 with one twisted edge has no 2-colouring under these maps.
    const Graph c4 = gen::cycle(4);
    const CorrespondenceAssignment tw(c4, {{0, 1}, {0, 1}, {0, 1}, {0, 1}},
                                      {{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, {{0, 0}, {1, 1}}});
    CHECK_FALSE(exact_correspondence_colouring(c4, tw));
}
