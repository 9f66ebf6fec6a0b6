#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "sparsecol/bounds.hpp"
#include "sparsecol/ncp.hpp"

using namespace sparsecol;

TEST_CASE("keep probability")
{
    CHECK(keep_probability(1, 1) == 0.5);
    CHECK(keep_probability(2, 2) == 9.0 / 16.0);
    CHECK(keep_probability(15, 20) == doctest::Approx(std::pow(29.0 / 30.0, 20)));
    double prev = 0;
    for (int k = 1; k < 200; ++k) {
        const double p = keep_probability(k, 7);
        CHECK(p > prev);
        prev = p;
    }
    CHECK(prev < 1.0);
    CHECK_THROWS_AS(keep_probability(0, 3), std::invalid_argument);
}

TEST_CASE("run_round basics")
{
    const Graph k2 = gen::complete(2);
    const auto c1 = CorrespondenceAssignment::identity(k2, 1);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const RoundOutcome o = run_round(k2, c1, s);
        CHECK(o.kept[0] != o.kept[1]);
        CHECK(is_valid_colouring(k2, c1, o.f));
    }

    // Disjoint images: nothing can conflict.
    const Graph k4 = gen::complete(4);
    std::vector<std::vector<Colour>> sets{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    std::vector<std::vector<ColourPair>> maps(6);
    const CorrespondenceAssignment empty_maps(k4, sets, maps);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const RoundOutcome o = run_round(k4, empty_maps, s, 0, Totality::relaxed);
        CHECK(std::all_of(o.kept.begin(), o.kept.end(), [](bool b) { return b; }));
    }
    CHECK_THROWS_AS(run_round(k4, empty_maps, 0), std::invalid_argument);

    const Graph g = gen::random_regular(40, 5, 3);
    const auto c = CorrespondenceAssignment::identity(g, 4);
    const RoundOutcome a = run_round(g, c, 77, 2);
    const RoundOutcome b = run_round(g, c, 77, 2);
    CHECK(a.f1 == b.f1);
    CHECK(a.kept == b.kept);
    CHECK(a.direction == b.direction);
    CHECK(run_round(g, c, 78, 2).f1 != a.f1);
}

TEST_CASE("resolve_round applies the direction rule")
{
    const Graph p3 = gen::path(3);  // edges 0-1, 1-2
    const auto c = CorrespondenceAssignment::identity(p3, 2);
    // All tentative colours equal; edge 0-1 points at 1, edge 1-2 points at 2.
    const RoundOutcome o = resolve_round(p3, c, {0, 0, 0}, {1, 2});
    CHECK(o.kept == std::vector<bool>{true, false, false});
    CHECK(o.f[0] == 0);
    CHECK_FALSE(o.f[1]);
}

TEST_CASE("round statistics")
{
    const Graph s = gen::star(2);
    const auto c = CorrespondenceAssignment::identity(s, 2);
    const RoundOutcome o = resolve_round(s, c, {1, 0, 0}, {0, 0});
    const RoundStats st = round_stats(s, c, o);
    CHECK(st.p[0] == 1);
    CHECK(st.t[0] == 0);
    CHECK(st.col[0] == 2);
    CHECK(st.dist[0] == 1);

    const Graph k3 = gen::complete(3);
    const auto c3 = CorrespondenceAssignment::identity(k3, 2);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const RoundStats t = round_stats(k3, c3, run_round(k3, c3, seed));
        CHECK(t.p == std::vector<std::int64_t>{0, 0, 0});
        CHECK(t.t == std::vector<std::int64_t>{0, 0, 0});
    }

    // With twisted maps, adjacent neighbours may block the same colour at u
    // without conflicting. N(0) = {1..4} with non-adjacency graph C4, all
    // blocking colour 0: four non-adjacent pairs, no triple, one repeat less.
    const Graph w = fixtures::from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {2, 4}});
    const std::vector<ColourPair> id{{0, 0}, {1, 1}}, tw{{0, 1}, {1, 0}};
    const CorrespondenceAssignment cw(w, std::vector<std::vector<Colour>>(5, {0, 1}), {id, id, id, id, tw, tw});
    const RoundOutcome ow = resolve_round(w, cw, {1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 2});
    REQUIRE(is_valid_colouring(w, cw, ow.f));
    const RoundStats sw = round_stats(w, cw, ow);
    CHECK(sw.col[0] - sw.dist[0] == 3);
    CHECK(sw.p[0] - sw.t[0] == 4);

    const Graph g = gen::random_regular(30, 6, 8);
    const auto cg = CorrespondenceAssignment::identity(g, 3);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const RoundOutcome r = run_round(g, cg, seed);
        const RoundStats t = round_stats(g, cg, r);
        for (Vertex u = 0; u < g.size(); ++u) {
            const auto i = static_cast<std::size_t>(u);
            CHECK(t.col[i] >= t.dist[i]);
            CHECK(t.col[i] - t.dist[i] >= t.p[i] - t.t[i]);
        }
        for (std::size_t j = 0; j < t.pairs.size(); ++j) {
            if (t.pairs[j].first != t.pairs[j].second) continue;
            const Vertex u = t.pairs[j].first;
            int residual = 0;
            for (Vertex w : g.neighbours(u)) residual += !r.kept[static_cast<std::size_t>(w)];
            CHECK(t.pair_uncoloured[j] == residual);
        }
    }
}

TEST_CASE("quasirandom check")
{
    const Graph g = gen::petersen();
    CHECK(quasirandom_check(g, std::vector<bool>(10, true), 1.0, 0.0).ok);
    CHECK(quasirandom_check(g, std::vector<bool>(10, false), 0.0, 0.0).ok);

    // C5 with 0 and 1 uncoloured: N(3) = {2, 4} has no uncoloured vertex.
    const Graph c5 = gen::cycle(5);
    std::vector<bool> un{true, true, false, false, false};
    const QuasirandomReport r = quasirandom_check(c5, un, 0.5, 0.0);
    CHECK_FALSE(r.ok);
    CHECK(r.worst_pair == std::pair<Vertex, Vertex>{3, 3});
    CHECK(r.worst_deviation == 1.0);
    CHECK(r.violations == 6);

    CHECK(asymptotic_slack(100) == doctest::Approx(10.0 * std::pow(std::log(100.0), 5)));
    CHECK(practical_slack(100) == doctest::Approx(3.0 * std::sqrt(100.0 * std::log(100.0))));
    CHECK(practical_slack(2) == doctest::Approx(3.0 * std::sqrt(2.0)));
}

TEST_CASE("savings bound and round parameters")
{
    const int k = 40, d = 50;
    const double s = 0.6;
    const double expect = (d * s / (2.0 * k) * std::exp(-double(d) / k) -
                           double(d) * d * std::pow(s, 1.5) / (6.0 * k * k) * std::exp(-7.0 * d / (8.0 * k))) *
                          d;
    CHECK(savings_bound(k, d, s) == doctest::Approx(expect));
    const RoundParams pr = make_round_params(ThresholdProfile::practical, k, d, s, 0.01);
    CHECK(pr.a_threshold == doctest::Approx(0.5 * expect));
    CHECK(pr.mu == doctest::Approx(1.0 - keep_probability(k, d)));
    const RoundParams pp = make_round_params(ThresholdProfile::asymptotic, k, d, s, 0.01);
    CHECK(pp.a_threshold == doctest::Approx((1 - 1 / std::log(50.0)) * expect));
    CHECK(pp.slack == doctest::Approx(asymptotic_slack(d)));
    const RoundParams pv = make_round_params(ThresholdProfile::vacuous, k, d, s);
    CHECK(std::isinf(pv.slack));
}

TEST_CASE("attempt_round")
{
    const Graph e = gen::empty(5);
    const auto ce = CorrespondenceAssignment::identity(e, 2);
    const RoundAttempt a = attempt_round(e, ce, make_round_params(ThresholdProfile::practical, 2, 0, 1.0), 1);
    CHECK(a.success);
    CHECK(a.attempts == 1);

    const Graph k3 = gen::complete(3);
    const auto c3 = CorrespondenceAssignment::identity(k3, 2);
    const RoundAttempt b = attempt_round(k3, c3, make_round_params(ThresholdProfile::vacuous, 2, 2, 0.0), 1);
    CHECK(b.success);
    CHECK(b.attempts == 1);

    const Graph g = gen::random_regular(50, 6, 4);
    const auto cg = CorrespondenceAssignment::identity(g, 5);
    const RoundParams p = make_round_params(ThresholdProfile::asymptotic, 5, 6, local_sparsity(g).delta);
    const RoundAttempt x = attempt_round(g, cg, p, 99, 10);
    const RoundAttempt y = attempt_round(g, cg, p, 99, 10);
    CHECK(x.success == y.success);
    CHECK(x.attempts == y.attempts);
    CHECK(x.outcome.f == y.outcome.f);
    CHECK(is_valid_colouring(g, cg, x.outcome.f));
}

TEST_CASE("schedule")
{
    const IterationSchedule s = build_schedule(0.05, 0.9, 0.02, 0.855, 1e6);
    CHECK(s.T == 6);
    REQUIRE(s.rows.size() == 7);
    CHECK(s.rows[3].eps == doctest::Approx(s.eps_prime - 3 * 0.02 / 2));
    CHECK(s.rows.back().eps < 0);
    CHECK(s.rows.back().k > s.rows.back().r);
    for (std::size_t i = 0; i + 1 < s.rows.size(); ++i) {
        CHECK(s.rows[i + 1].gamma <= s.rows[i].gamma);
        const ScheduleRow& r = s.rows[i];
        CHECK(r.gamma == doctest::Approx(r.eps * std::exp(-1 / (2 * (1 - r.eps))) + 0.02));
        CHECK(r.k == doctest::Approx((1 - r.eps) * r.r));
        CHECK(s.rows[i + 1].r == doctest::Approx((r.mu + 0.01) * r.r));
        CHECK(r.delta == doctest::Approx(0.9 - (double(i) / 6) * (0.9 - 0.855)));
    }
    CHECK_THROWS_AS(build_schedule(0.05, 0.9, 0.5, 0.855, 1e6), ScheduleError);
    CHECK_THROWS_AS(build_schedule(0.6, 0.9, 0.02, 0.855, 1e6), ScheduleError);

    const IterationSchedule d = default_schedule(0.05, 0.9, 1000);
    CHECK(d.delta_prime == doctest::Approx(0.95 * 0.9));
    CHECK(d.rows.back().eps < 0);
    // The strong edge pair sits just outside the condition, so no beta exists.
    CHECK_THROWS_AS(default_schedule(0.0825, 0.345, 1000), ScheduleError);
}

TEST_CASE("iterative colouring")
{
    const Graph e = gen::empty(6);
    const IterationSchedule s = default_schedule(0.05, 0.9, 100);
    const IterativeResult re = iterative_colour(e, CorrespondenceAssignment::identity(e, 1), s, 1);
    CHECK(re.success);
    CHECK(re.trace.empty());

    const Graph c5 = gen::cycle(5);
    const IterativeResult rc = iterative_colour(c5, CorrespondenceAssignment::identity(c5, 3), s, 1);
    CHECK(rc.success);
    CHECK(rc.trace.empty());

    const Graph g = gen::random_regular(100, 8, 6);
    const auto cg = CorrespondenceAssignment::identity(g, 8);
    const IterationSchedule sg = default_schedule(1.0 - 8.0 / 8.0 + 0.05, local_sparsity(g).delta, 8);
    IterativeOptions opts;
    opts.best_effort = true;
    const IterativeResult a = iterative_colour(g, cg, sg, 5, opts);
    const IterativeResult b = iterative_colour(g, cg, sg, 5, opts);
    CHECK(a.colouring == b.colouring);
    if (a.success) CHECK(is_valid_colouring(g, cg, a.colouring));
    // Colours never change once kept.
    for (std::size_t v = 0; v < a.colouring.size(); ++v)
        if (a.success) CHECK(a.colouring[v].has_value());
}

TEST_CASE("greedy completion")
{
    const Graph k3 = gen::complete(3);
    const auto c3 = CorrespondenceAssignment::identity(k3, 3);
    const PartialColouring full{0, 1, 2};
    const GreedyCompletion a = greedy_complete(k3, c3, full);
    CHECK(a.success);
    CHECK(a.colouring == full);

    const Graph k2 = gen::complete(2);
    const GreedyCompletion b = greedy_complete(k2, CorrespondenceAssignment::identity(k2, 1), {0, std::nullopt});
    CHECK_FALSE(b.success);
    CHECK(b.failed == std::vector<Vertex>{1});

    const Graph p3 = gen::path(3);
    const auto cp = CorrespondenceAssignment::identity(p3, 2);
    const GreedyCompletion c = greedy_complete(p3, cp, {std::nullopt, 0, std::nullopt});
    CHECK(c.success);
    CHECK(c.hypothesis_held);
    CHECK(c.colouring == PartialColouring{1, 0, 1});
}
