#pragma once

#include <cstdint>

#include "sparsecol/graph.hpp"

namespace sparsecol::gen {

Graph empty(Vertex n);
Graph complete(Vertex n);
Graph cycle(Vertex n);
Graph path(Vertex n);
// K_{1,leaves}, centre is vertex 0.
Graph star(Vertex leaves);
Graph petersen();
Graph disjoint_union(const Graph& a, const Graph& b);
Graph complete_minus_edge(Vertex n);

// Point-line incidence graph of the projective plane over Z_q, q prime:
// (q + 1)-regular, girth 6, points 0..q^2+q, lines after them.
// Throws GraphError unless q is a prime below 100.
Graph projective_plane(int q);

// Uniform-ish random d-regular simple graph (Steger-Wormald pairing with
// restarts). Throws GraphError when n*d is odd or d >= n.
Graph random_regular(Vertex n, int d, std::uint64_t seed);

// Erdos-Renyi G(n, p).
Graph random_gnp(Vertex n, double p, std::uint64_t seed);

}  // namespace sparsecol::gen
