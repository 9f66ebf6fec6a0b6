#include "sparsecol/generators.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>
#include <vector>

#include "sparsecol/rng.hpp"

namespace sparsecol::gen {

Graph empty(Vertex n) { return Graph(n); }

Graph complete(Vertex n)
{
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) es.push_back({u, v});
    return Graph::from_edges(n, es);
}

Graph cycle(Vertex n)
{
    if (n < 3) throw GraphError("cycle needs at least 3 vertices");
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u) es.push_back(make_edge(u, (u + 1) % n));
    return Graph::from_edges(n, es);
}

Graph path(Vertex n)
{
    std::vector<Edge> es;
    for (Vertex u = 0; u + 1 < n; ++u) es.push_back({u, u + 1});
    return Graph::from_edges(n, es);
}

Graph star(Vertex leaves)
{
    std::vector<Edge> es;
    for (Vertex v = 1; v <= leaves; ++v) es.push_back({0, v});
    return Graph::from_edges(leaves + 1, es);
}

Graph petersen()
{
    std::vector<Edge> es;
    for (Vertex i = 0; i < 5; ++i) {
        es.push_back(make_edge(i, (i + 1) % 5));          // outer cycle
        es.push_back(make_edge(i, i + 5));                // spokes
        es.push_back(make_edge(5 + i, 5 + (i + 2) % 5));  // inner pentagram
    }
    return Graph::from_edges(10, es);
}

Graph projective_plane(int q)
{
    if (q < 2 || q >= 100) throw GraphError("projective_plane: q must be a prime below 100");
    for (int p = 2; p * p <= q; ++p)
        if (q % p == 0) throw GraphError("projective_plane: q must be prime");
    // Normalised homogeneous coordinates; the plane is self-dual, so the
    // same list names the lines.
    std::vector<std::array<int, 3>> pts;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) pts.push_back({a, b, 1});
    for (int a = 0; a < q; ++a) pts.push_back({a, 1, 0});
    pts.push_back({1, 0, 0});
    const auto n = static_cast<Vertex>(pts.size());
    std::vector<Edge> es;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j) {
            const auto& x = pts[static_cast<std::size_t>(i)];
            const auto& y = pts[static_cast<std::size_t>(j)];
            if ((x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0) es.push_back(make_edge(i, n + j));
        }
    return Graph::from_edges(2 * n, es);
}

Graph disjoint_union(const Graph& a, const Graph& b)
{
    std::vector<Edge> es = a.edges();
    for (const Edge& e : b.edges()) es.push_back({e.first + a.size(), e.second + a.size()});
    return Graph::from_edges(a.size() + b.size(), es);
}

Graph complete_minus_edge(Vertex n)
{
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!(u == 0 && v == 1)) es.push_back({u, v});
    return Graph::from_edges(n, es);
}

namespace {

std::uint64_t key(Vertex u, Vertex v)
{
    const Edge e = make_edge(u, v);
    return (static_cast<std::uint64_t>(e.first) << 32) | static_cast<std::uint32_t>(e.second);
}

// One Steger-Wormald attempt: pair random points from distinct vertices
// without creating loops or multi-edges. Empty result when stuck.
std::vector<Edge> pairing_attempt(Vertex n, int d, SplitMix64& rng)
{
    std::vector<Vertex> points;
    points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (Vertex v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i) points.push_back(v);

    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> es;
    es.reserve(points.size() / 2);
    while (!points.empty()) {
        bool placed = false;
        // Random probing first, then an exhaustive scan to detect dead ends.
        for (int probe = 0; probe < 64 && !placed; ++probe) {
            const auto i = static_cast<std::size_t>(rng.uniform(points.size()));
            const auto j = static_cast<std::size_t>(rng.uniform(points.size()));
            const Vertex u = points[i];
            const Vertex v = points[j];
            if (i == j || u == v || seen.count(key(u, v))) continue;
            seen.insert(key(u, v));
            es.push_back(make_edge(u, v));
            const std::size_t hi = std::max(i, j);
            const std::size_t lo = std::min(i, j);
            points[hi] = points.back();
            points.pop_back();
            points[lo] = points.back();
            points.pop_back();
            placed = true;
        }
        if (placed) continue;
        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] != points[j] && !seen.count(key(points[i], points[j]))) options.emplace_back(i, j);
        if (options.empty()) return {};
        auto [lo, hi] = options[static_cast<std::size_t>(rng.uniform(options.size()))];
        seen.insert(key(points[lo], points[hi]));
        es.push_back(make_edge(points[lo], points[hi]));
        points[hi] = points.back();
        points.pop_back();
        points[lo] = points.back();
        points.pop_back();
    }
    return es;
}

}  // namespace

Graph random_regular(Vertex n, int d, std::uint64_t seed)
{
    if (d < 0 || n < 0) throw GraphError("random_regular: negative parameters");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw GraphError("random_regular: n*d must be even");
    if (d >= n && !(n == 0 && d == 0)) throw GraphError("random_regular: need d < n");
    SplitMix64 rng(derive_seed(seed, Stream::generator, 0));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto es = pairing_attempt(n, d, rng);
        if (es.size() * 2 == static_cast<std::size_t>(n) * static_cast<std::size_t>(d))
            return Graph::from_edges(n, es);
    }
    throw GraphError("random_regular: pairing failed after 1000 attempts");
}

Graph random_gnp(Vertex n, double p, std::uint64_t seed)
{
    SplitMix64 rng(derive_seed(seed, Stream::generator, 1));
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.unit() < p) es.push_back({u, v});
    return Graph::from_edges(n, es);
}

}  // namespace sparsecol::gen
