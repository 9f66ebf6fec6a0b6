#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsecol {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Colour = std::int32_t;

// Vertex -> optional colour.
using PartialColouring = std::vector<std::optional<Colour>>;

// Undirected edge stored with first < second.
struct Edge {
    Vertex first;
    Vertex second;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;

    Vertex other(Vertex v) const noexcept { return v == first ? second : first; }
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simple undirected graph on vertices 0..n-1.
//
// Neighbour lists are sorted strictly ascending and symmetric. Edges get
// dense ids in lexicographic order of their (min, max) endpoints, and each
// adjacency entry carries the id of the edge it came from.
class Graph {
public:
    Graph() = default;
    explicit Graph(Vertex n);

    // Throws GraphError on self-loops, duplicate edges or out-of-range ids.
    static Graph from_edges(Vertex n, std::span<const Edge> edges);
    static Graph from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);

    Vertex size() const noexcept { return static_cast<Vertex>(adjacency_.size()); }
    EdgeId edge_count() const noexcept { return static_cast<EdgeId>(edges_.size()); }

    std::span<const Vertex> neighbours(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    std::span<const EdgeId> incident_edges(Vertex v) const { return incidence_[static_cast<std::size_t>(v)]; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

    int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
    // 0 for the null graph.
    int max_degree() const noexcept;
    int min_degree() const noexcept;
    bool is_regular() const noexcept { return max_degree() == min_degree(); }

    bool adjacent(Vertex u, Vertex v) const;
    // -1 when u and v are not adjacent.
    EdgeId edge_id(Vertex u, Vertex v) const;

    // |N(u) ∩ N(v)|
    int common_neighbours(Vertex u, Vertex v) const;

    // Subgraph induced by `keep` (any order, no repeats); vertex i of the
    // result is keep[i].
    Graph induced(std::span<const Vertex> keep) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<EdgeId>> incidence_;
    std::vector<Edge> edges_;
};

// Size of the intersection of two ascending ranges.
int sorted_intersection_size(std::span<const Vertex> a, std::span<const Vertex> b);

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

}  // namespace sparsecol
