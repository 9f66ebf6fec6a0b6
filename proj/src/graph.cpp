#include "sparsecol/graph.hpp"

#include <algorithm>

namespace sparsecol {

Graph::Graph(Vertex n)
{
    if (n < 0) throw GraphError("negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(n));
    incidence_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges)
{
    Graph g(n);
    std::vector<Edge> sorted;
    sorted.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw GraphError("edge endpoint out of range: " + std::to_string(e.first) + " " +
                             std::to_string(e.second));
        if (e.first == e.second) throw GraphError("self-loop at vertex " + std::to_string(e.first));
        sorted.push_back(make_edge(e.first, e.second));
    }
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw GraphError("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));

    g.edges_ = std::move(sorted);
    // Edges are sorted by (first, second): a vertex v first receives its
    // smaller neighbours (as `second`) in ascending order, then its larger
    // ones (as `first`), so every list comes out sorted.
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edges_[static_cast<std::size_t>(id)];
        g.adjacency_[static_cast<std::size_t>(e.first)].push_back(e.second);
        g.incidence_[static_cast<std::size_t>(e.first)].push_back(id);
        g.adjacency_[static_cast<std::size_t>(e.second)].push_back(e.first);
        g.incidence_[static_cast<std::size_t>(e.second)].push_back(id);
    }
    return g;
}

Graph Graph::from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges)
{
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (auto [u, v] : edges) es.push_back(Edge{u, v});
    return from_edges(n, es);
}

int Graph::max_degree() const noexcept
{
    int best = 0;
    for (const auto& adj : adjacency_) best = std::max(best, static_cast<int>(adj.size()));
    return best;
}

int Graph::min_degree() const noexcept
{
    if (adjacency_.empty()) return 0;
    int best = static_cast<int>(adjacency_.front().size());
    for (const auto& adj : adjacency_) best = std::min(best, static_cast<int>(adj.size()));
    return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const
{
    const auto& adj = adjacency_[static_cast<std::size_t>(u)];
    return std::binary_search(adj.begin(), adj.end(), v);
}

EdgeId Graph::edge_id(Vertex u, Vertex v) const
{
    const auto& adj = adjacency_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(adj.begin(), adj.end(), v);
    if (it == adj.end() || *it != v) return -1;
    return incidence_[static_cast<std::size_t>(u)][static_cast<std::size_t>(it - adj.begin())];
}

int Graph::common_neighbours(Vertex u, Vertex v) const
{
    return sorted_intersection_size(neighbours(u), neighbours(v));
}

Graph Graph::induced(std::span<const Vertex> keep) const
{
    std::vector<Vertex> index(adjacency_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const Vertex v = keep[i];
        if (v < 0 || v >= size()) throw GraphError("induced: vertex out of range");
        if (index[static_cast<std::size_t>(v)] != -1) throw GraphError("induced: repeated vertex");
        index[static_cast<std::size_t>(v)] = static_cast<Vertex>(i);
    }
    std::vector<Edge> es;
    for (const Edge& e : edges_) {
        const Vertex a = index[static_cast<std::size_t>(e.first)];
        const Vertex b = index[static_cast<std::size_t>(e.second)];
        if (a >= 0 && b >= 0) es.push_back(make_edge(a, b));
    }
    return from_edges(static_cast<Vertex>(keep.size()), es);
}

int sorted_intersection_size(std::span<const Vertex> a, std::span<const Vertex> b)
{
    int count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

}  // namespace sparsecol
