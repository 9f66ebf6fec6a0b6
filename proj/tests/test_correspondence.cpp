#include <doctest.h>

#include <numeric>

#include "fixtures.hpp"
#include "sparsecol/correspondence.hpp"

using namespace sparsecol;

namespace {

PartialColouring col(std::initializer_list<int> xs)
{
    PartialColouring f;
    for (int x : xs) f.push_back(x < 0 ? std::nullopt : std::optional<Colour>(x));
    return f;
}

bool list_proper(const Graph& g, const PartialColouring& f)
{
    for (const Edge& e : g.edges()) {
        const auto& a = f[static_cast<std::size_t>(e.first)];
        const auto& b = f[static_cast<std::size_t>(e.second)];
        if (a && b && *a == *b) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("from_lists")
{
    const Graph k2 = gen::complete(2);
    const auto same = CorrespondenceAssignment::from_lists(k2, {{1, 2}, {1, 2}});
    CHECK(same.edge_map(0).forward == std::vector<ColourPair>{{1, 1}, {2, 2}});
    CHECK(is_valid_colouring(k2, same, col({1, 2})));
    CHECK_FALSE(is_valid_colouring(k2, same, col({1, 1})));

    const auto disjoint = CorrespondenceAssignment::from_lists(k2, {{1}, {2}});
    CHECK(disjoint.edge_map(0).forward.empty());
    CHECK(is_valid_colouring(k2, disjoint, col({1, 2})));
    CHECK_THROWS_AS(CorrespondenceAssignment::from_lists(k2, {{1}, {}}), AssignmentError);

    const Graph k3 = gen::complete(3);
    const auto two = CorrespondenceAssignment::from_lists(k3, {{1, 2}, {1, 2}, {1, 2}});
    int valid = 0;
    fixtures::for_each_colouring(two, false, [&](const PartialColouring& f) { valid += is_valid_colouring(k3, two, f); });
    CHECK(valid == 0);
}

TEST_CASE("from_lists validity equals list properness")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const Graph g = fixtures::random_small_graph(rng, 4);
        std::vector<std::vector<Colour>> lists;
        for (Vertex v = 0; v < g.size(); ++v) {
            std::vector<Colour> l;
            for (Colour x = 0; x < 4; ++x)
                if (std::bernoulli_distribution(0.6)(rng) && l.size() < 3) l.push_back(x);
            if (l.empty()) l.push_back(0);
            lists.push_back(l);
        }
        const auto c = CorrespondenceAssignment::from_lists(g, lists);
        fixtures::for_each_colouring(c, true, [&](const PartialColouring& f) {
            CHECK(is_valid_colouring(g, c, f) == list_proper(g, f));
        });
    }
}

TEST_CASE("maps are stored once and inverted")
{
    const Graph k2 = gen::complete(2);
    const CorrespondenceAssignment c(k2, {{1, 2}, {1, 2}}, {{{1, 2}}});
    CHECK(c.map(0, 0, 1) == 2);
    CHECK(c.map(0, 1, 2) == 1);
    CHECK_FALSE(c.map(0, 0, 2));
    CHECK_FALSE(is_valid_colouring(k2, c, col({1, 2})));
    CHECK(is_valid_colouring(k2, c, col({1, 1})));
    CHECK(is_valid_colouring(k2, c, col({-1, -1})));
    CHECK_THROWS_AS(CorrespondenceAssignment(k2, {{1, 2}, {1, 2}}, {{{1, 2}, {2, 2}}}), AssignmentError);
    CHECK_THROWS_AS(CorrespondenceAssignment(k2, {{1, 2}, {1, 2}}, {{{3, 1}}}), AssignmentError);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = gen::random_gnp(8, 0.5, trial);
        const auto a = fixtures::random_assignment(g, rng, 1, 4, 6);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            for (Colour x : a.colours(ed.first))
                if (auto y = a.map(e, ed.first, x)) CHECK(a.map(e, ed.second, *y) == x);
        }
    }
}

TEST_CASE("validity does not depend on vertex labelling")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = fixtures::random_small_graph(rng, 4);
        const auto c = fixtures::random_assignment(g, rng, 1, 2, 3);
        // Reverse the labels, which flips the stored orientation of every edge.
        const Vertex n = g.size();
        std::vector<std::pair<Vertex, Vertex>> rev;
        for (const Edge& e : g.edges()) rev.emplace_back(n - 1 - e.first, n - 1 - e.second);
        const Graph h = Graph::from_edges(n, rev);
        std::vector<std::vector<Colour>> sets(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) sets[static_cast<std::size_t>(n - 1 - v)] = c.colours(v);
        std::vector<std::vector<ColourPair>> maps(static_cast<std::size_t>(h.edge_count()));
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            const EdgeId he = h.edge_id(n - 1 - ed.first, n - 1 - ed.second);
            for (const auto& [x, y] : c.edge_map(e).forward) maps[static_cast<std::size_t>(he)].emplace_back(y, x);
        }
        const CorrespondenceAssignment d(h, sets, maps);
        fixtures::for_each_colouring(c, true, [&](const PartialColouring& f) {
            PartialColouring fr(f.rbegin(), f.rend());
            CHECK(is_valid_colouring(g, c, f) == is_valid_colouring(h, d, fr));
        });
    }
}

TEST_CASE("totalize")
{
    const Graph k2 = gen::complete(2);
    const CorrespondenceAssignment part(k2, {{1, 2}, {1, 2}}, {{{1, 2}}});
    const auto t = totalize(part);
    CHECK(t.is_total());
    CHECK(t.edge_map(0).forward == std::vector<ColourPair>{{1, 2}, {2, 1}});
    const CorrespondenceAssignment none(k2, {{1, 2}, {1, 2}}, {{}});
    CHECK(totalize(none).edge_map(0).forward == std::vector<ColourPair>{{1, 1}, {2, 2}});
    CHECK_THROWS_AS(totalize(CorrespondenceAssignment(k2, {{1}, {1, 2}}, {{}})), AssignmentError);

    // Output-valid implies input-valid, over all 27 colourings of C3.
    const Graph c3 = gen::cycle(3);
    const CorrespondenceAssignment c(c3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {{{0, 1}}, {{2, 2}}, {{1, 0}, {0, 2}}});
    const auto tc = totalize(c);
    CHECK(tc.is_total());
    int seen = 0;
    fixtures::for_each_colouring(tc, false, [&](const PartialColouring& f) {
        ++seen;
        if (is_valid_colouring(c3, tc, f)) CHECK(is_valid_colouring(c3, c, f));
    });
    CHECK(seen == 27);
    for (EdgeId e = 0; e < c3.edge_count(); ++e)
        for (const auto& [x, y] : c.edge_map(e).forward) CHECK(tc.map(e, c3.edge(e).first, x) == y);
}

TEST_CASE("truncate")
{
    const Graph k2 = gen::complete(2);
    const auto c = CorrespondenceAssignment::from_lists(k2, {{1, 2, 3}, {1, 2, 3, 4}});
    const auto t = truncate(c, 2);
    CHECK(t.colours(0) == std::vector<Colour>{1, 2});
    CHECK(t.colours(1) == std::vector<Colour>{1, 2});
    const auto t3 = truncate(c, 3);
    CHECK(t3.colours(0) == std::vector<Colour>{1, 2, 3});
    CHECK(t3.colours(1) == std::vector<Colour>{1, 2, 3});
    CHECK_THROWS_AS(truncate(c, 4), AssignmentError);
    fixtures::for_each_colouring(t, true, [&](const PartialColouring& f) {
        if (is_valid_colouring(k2, t, f)) CHECK(is_valid_colouring(k2, c, f));
    });
}

TEST_CASE("residual assignment")
{
    const Graph k2 = gen::complete(2);
    const auto c = CorrespondenceAssignment::identity(k2, 3);
    const auto all = residual_assignment(k2, c, col({0, 1}));
    CHECK(all.graph.size() == 0);
    const auto r = residual_assignment(k2, c, col({1, -1}));
    REQUIRE(r.graph.size() == 1);
    CHECK(r.original_ids == std::vector<Vertex>{1});
    CHECK(r.assignment.colours(0) == std::vector<Colour>{0, 2});
    CHECK_THROWS_AS(residual_assignment(k2, c, col({1, 1})), AssignmentError);

    // P3 with twisted maps, middle coloured 0.
    const Graph p3 = gen::path(3);
    const CorrespondenceAssignment cp(p3, {{0, 1, 2}, {0, 1}, {0, 1, 2}}, {{{2, 0}, {0, 1}}, {{0, 1}, {1, 2}}});
    const auto rp = residual_assignment(p3, cp, col({-1, 0, -1}));
    REQUIRE(rp.graph.size() == 2);
    CHECK(rp.assignment.colours(0) == std::vector<Colour>{0, 1});  // lost 2
    CHECK(rp.assignment.colours(1) == std::vector<Colour>{0, 2});  // lost 1
}

TEST_CASE("residual extension property, exhaustively on small instances")
{
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const Graph g = fixtures::random_small_graph(rng, 5);
        const auto c = fixtures::random_assignment(g, rng, 1, 2, 3);
        fixtures::for_each_colouring(c, true, [&](const PartialColouring& f) {
            if (!is_valid_colouring(g, c, f)) return;
            const auto r = residual_assignment(g, c, f);
            fixtures::for_each_colouring(r.assignment, false, [&](const PartialColouring& phi) {
                if (!is_valid_colouring(r.graph, r.assignment, phi)) return;
                PartialColouring u = f;
                for (std::size_t i = 0; i < phi.size(); ++i)
                    u[static_cast<std::size_t>(r.original_ids[i])] = phi[i];
                CHECK(is_valid_colouring(g, c, u));
                ++checked;
            });
        });
    }
    CHECK(checked > 500);
}

TEST_CASE("greedy correspondence and JSON")
{
    const Graph g = gen::petersen();
    std::mt19937_64 rng(1);
    const auto c = fixtures::random_assignment(g, rng, 4, 4, 6);
    std::vector<Vertex> order(10);
    std::iota(order.begin(), order.end(), 0);
    const GreedyResult r = greedy_correspondence(g, c, order, {});
    CHECK(r.success());
    CHECK(is_valid_colouring(g, c, r.colouring));
    CHECK(assignment_from_json(g, assignment_to_json(c)) == c);
}
