#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsecol/bounds.hpp"
#include "sparsecol/graph.hpp"

namespace sparsecol {

// Square of the line graph: vertex i is host edge i, adjacent when the two
// host edges share an end or are joined by a host edge.
struct LineGraphSquare {
    Graph graph;
    std::vector<Edge> host_edges;  // host_edges[i] = h.edge(i)
};

// Throws std::invalid_argument for an edgeless host.
LineGraphSquare line_graph_square(const Graph& h);

// Five independent groups of k vertices, cyclically consecutive groups
// completely joined. Group g holds vertices g*k .. g*k + k - 1.
Graph c5_blowup(int k);

struct StrongProfile {
    Edge edge{};
    int max_degree = 0;                 // Delta(h)
    std::vector<Vertex> x;              // N(u) ∪ N(v) \ {u, v}
    std::vector<Vertex> y;              // N(X) \ (X ∪ {u, v})
    int common = 0;                     // |N(u) ∩ N(v)| = alpha Delta
    std::int64_t x_edges = 0;           // |E(h[X])| = beta Delta^2
    std::int64_t gamma_sum = 0;         // sum_y d_X(y)(Delta - d_X(y)) = gamma Delta^3
    double alpha = 0, beta = 0, gamma = 0;
    std::int64_t strong_degree = 0;     // d^s(uv)
    std::int64_t c4 = 0;                // 4-cycles x1 y1 x2 y2
};

StrongProfile strong_profile(const Graph& h, EdgeId e);

// (2 - a - b) D^2 - 2D
double strong_degree_bound(const StrongProfile& p);
// 1/2 ((2 - a - 2b - g)^2 D^4 / (2 (2 - a)^2) - (7 - g/2) D^3)
double c4_lower_bound(const StrongProfile& p);
// (2 - a - b - g/2) D^4 - 2 C4 + (g/2 - 2) D^3
double neighbourhood_edge_bound_basic(const StrongProfile& p);
// The basic bound minus g^2 D^4 / (2 (2 - a - b)). Throws for a + b >= 2.
double strong_neighbourhood_edge_bound(const StrongProfile& p);

struct FCore {
    std::vector<Vertex> core;        // ascending
    std::vector<Vertex> peel_order;  // removal order
};

// Largest vertex set whose induced minimum degree is >= threshold, by peeling.
FCore f_core(const Graph& g, const bounds::Rational& threshold);

// (31/6 - 128/(3(10 - 3 eta)) + 4 eta - eta^2) Delta^4
double f_core_edge_bound(double eta, int max_degree);

struct FCoreDensityReport {
    double eta = 0;
    int max_degree = 0;
    int core_size = 0;
    double bound = 0;
    std::int64_t max_count = 0;  // largest |E(G[F_e])| over e in F
    double max_ratio = 0;        // max_count / bound, 0 when F is empty
    bool holds = true;
    EdgeId worst_edge = -1;
};

// Requires 0 <= eta <= 0.3 and a regular host.
FCoreDensityReport f_core_density_check(const Graph& h, double eta);

struct StrongColouring {
    std::vector<int> colours;  // per host edge id, from 1
    int num_colours = 0;
    double ratio_to_delta_sq = 0;
    int f_core_size = 0;
    bool used_iterative = false;
    bool fallback = false;  // iterative colouring of the core failed, greedy used
    std::string warning;
};

// Above this many colour pairs the core is coloured greedily instead.
inline constexpr double max_assignment_pairs = 2e7;

// Colours the F-core at (2 - eta) Delta^2, then the peeled host edges first-fit
// in reverse peel order. Throws std::logic_error if the result is not a valid
// strong edge colouring.
StrongColouring strong_edge_colour(const Graph& h, double eta = 0.164, std::uint64_t seed = 0);

// Edges at distance <= 2 in h get different colours, checked on h directly.
bool is_strong_edge_colouring(const Graph& h, const std::vector<int>& colours);

}  // namespace sparsecol
