#pragma once

#include <utility>
#include <vector>

#include "sparsecol/generators.hpp"
#include "sparsecol/graph.hpp"

namespace fixtures {

using sparsecol::Graph;
using sparsecol::Vertex;

inline Graph from_pairs(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges)
{
    return Graph::from_edges(n, edges);
}

// Hub 0 joined to the 5-cycle 1..5.
inline Graph wheel6()
{
    return from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
}

inline Graph complete_bipartite(Vertex a, Vertex b)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return from_pairs(a + b, e);
}

// Complement of the 7-cycle: i ~ j unless |i - j| is 1 mod 7.
inline Graph cycle7_complement()
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < 7; ++i)
        for (Vertex j = i + 2; j < 7; ++j)
            if (!(i == 0 && j == 6)) e.emplace_back(i, j);
    return from_pairs(7, e);
}

// K4 on 0..3 plus a pendant vertex 4 on vertex 0.
inline Graph k4_pendant()
{
    return from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}});
}

}  // namespace fixtures

#include <algorithm>
#include <functional>
#include <random>

#include "sparsecol/correspondence.hpp"

namespace fixtures {

using sparsecol::Colour;
using sparsecol::ColourPair;
using sparsecol::CorrespondenceAssignment;
using sparsecol::PartialColouring;

// Random colour sets drawn from 0..palette-1 and random partial injections.
inline CorrespondenceAssignment random_assignment(const Graph& g, std::mt19937_64& rng, int min_size, int max_size,
                                                  int palette)
{
    std::vector<std::vector<Colour>> sets;
    for (Vertex v = 0; v < g.size(); ++v) {
        std::vector<Colour> all(static_cast<std::size_t>(palette));
        for (int i = 0; i < palette; ++i) all[static_cast<std::size_t>(i)] = i;
        std::shuffle(all.begin(), all.end(), rng);
        const int s = std::uniform_int_distribution<int>(min_size, max_size)(rng);
        all.resize(static_cast<std::size_t>(s));
        std::sort(all.begin(), all.end());
        sets.push_back(all);
    }
    std::vector<std::vector<ColourPair>> maps;
    for (const auto& e : g.edges()) {
        auto a = sets[static_cast<std::size_t>(e.first)];
        auto b = sets[static_cast<std::size_t>(e.second)];
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        const std::size_t m = std::min(a.size(), b.size());
        const std::size_t len = std::uniform_int_distribution<std::size_t>(0, m)(rng);
        std::vector<ColourPair> pairs;
        for (std::size_t i = 0; i < len; ++i) pairs.emplace_back(a[i], b[i]);
        maps.push_back(pairs);
    }
    return CorrespondenceAssignment(g, sets, maps);
}

// Every f with f(u) in C(u) or uncoloured (partial) / always coloured (total).
inline void for_each_colouring(const CorrespondenceAssignment& c, bool partial,
                               const std::function<void(const PartialColouring&)>& visit)
{
    const auto n = static_cast<std::size_t>(c.size());
    std::vector<std::size_t> idx(n, 0);
    auto options = [&](std::size_t u) { return c.colours(static_cast<Vertex>(u)).size() + (partial ? 1 : 0); };
    for (std::size_t u = 0; u < n; ++u)
        if (options(u) == 0) return;
    PartialColouring f(n);
    while (true) {
        for (std::size_t u = 0; u < n; ++u) {
            const auto& cs = c.colours(static_cast<Vertex>(u));
            if (idx[u] < cs.size())
                f[u] = cs[idx[u]];
            else
                f[u].reset();
        }
        visit(f);
        std::size_t u = 0;
        while (u < n && ++idx[u] == options(u)) idx[u++] = 0;
        if (u == n) return;
    }
}

// Small random graph with at least one edge when possible.
inline Graph random_small_graph(std::mt19937_64& rng, Vertex max_n)
{
    const Vertex n = std::uniform_int_distribution<Vertex>(1, max_n)(rng);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (std::bernoulli_distribution(0.5)(rng)) e.emplace_back(a, b);
    return Graph::from_edges(n, e);
}

}  // namespace fixtures
