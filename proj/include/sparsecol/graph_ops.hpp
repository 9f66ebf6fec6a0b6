#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsecol/graph.hpp"

namespace sparsecol {

// Neighbourhood density of a graph. A graph is delta-sparse when every
// neighbourhood induces at most (1 - delta) * C(max_degree, 2) edges.
struct SparsityReport {
    std::vector<std::int64_t> neighbourhood_edges;  // e(v) = |E(G[N(v)])|
    int max_degree = 0;
    std::int64_t max_neighbourhood_edges = 0;
    // 1 - max_v e(v) / C(max_degree, 2)
    double delta = 0.0;
    // 1 - e(v) / C(d(v), 2); 1 for vertices of degree < 2.
    std::vector<double> per_vertex_delta;
};

enum class SparsityDenominator {
    global_max_degree,  // C(Delta, 2) for every vertex
    own_degree,         // C(d(v), 2); diagnostics only
};

// Throws std::domain_error("sparsity undefined") when max degree <= 1.
SparsityReport local_sparsity(const Graph& g,
                              SparsityDenominator denominator = SparsityDenominator::global_max_degree);

// Embeds g in a max_degree(g)-regular graph by repeatedly taking two copies
// and joining corresponding deficient vertices. g is induced on vertices
// 0..n-1 of the result.
Graph regularize(const Graph& g);

// Greedy maximal matching of the complement. Unmatched vertices are pairwise
// adjacent in g, so the matching has at least ceil((n - omega) / 2) edges.
// Throws std::invalid_argument if that bound fails (omega was wrong).
std::vector<Edge> complement_matching(const Graph& g, int omega);

// v_i has minimum degree in g[{v_i..v_r}]; ties go to the smaller id.
std::vector<Vertex> min_degree_ordering(const Graph& g, std::span<const Vertex> subset);

// floor((n + omega) / 2)
int list_chromatic_upper(int n, int omega);

struct CliqueInfo {
    int omega = 0;
    std::vector<std::vector<Vertex>> maximum_cliques;  // each sorted; list sorted
};

inline constexpr Vertex max_exact_clique_vertices = 64;

// Exact Bron-Kerbosch enumeration of all maximum cliques. Throws
// std::length_error beyond max_exact_clique_vertices.
CliqueInfo clique_info(const Graph& g);

struct HittingSetResult {
    std::optional<std::vector<Vertex>> set;
    bool search_exhausted = false;  // exact search ran to completion
    std::uint64_t nodes = 0;
    std::string diagnostic;
};

// Independent set meeting every maximum clique. Exact backtracking over
// independent transversals, greedy fallback when the node budget runs out.
HittingSetResult hitting_independent_set(const Graph& g, const CliqueInfo& cliques,
                                         std::uint64_t node_budget = 2'000'000);

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReductionRound {
    int omega_before = 0;
    int omega_after = 0;
    int max_degree_before = 0;
    int max_degree_after = 0;
    std::vector<Vertex> removed;  // original ids
};

struct CliqueReduction {
    Graph graph;
    int peeled = 0;
    std::vector<Vertex> original_ids;  // vertex i of graph is original_ids[i]
    std::vector<ReductionRound> rounds;
};

// While omega > 2/3 (Delta + 1): delete a maximal independent set that meets
// every maximum clique. Throws ReductionError when no hitting set is found.
CliqueReduction reduce_by_cliques(const Graph& g);

struct GreedyResult {
    PartialColouring colouring;
    std::vector<Vertex> failed;  // vertices whose palette was exhausted

    bool success() const noexcept { return failed.empty(); }
};

// First-fit list colouring in the given order; conflicts are equal colours.
GreedyResult greedy_colour(const Graph& g, std::span<const Vertex> order,
                           const std::vector<std::vector<Colour>>& palettes);

}  // namespace sparsecol
