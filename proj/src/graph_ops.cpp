#include "sparsecol/graph_ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace sparsecol {

namespace {

std::int64_t choose2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace

SparsityReport local_sparsity(const Graph& g, SparsityDenominator denominator)
{
    const int delta = g.max_degree();
    if (delta <= 1) throw std::domain_error("sparsity undefined: maximum degree must be at least 2");

    SparsityReport r;
    r.max_degree = delta;
    r.neighbourhood_edges.resize(static_cast<std::size_t>(g.size()));
    r.per_vertex_delta.resize(static_cast<std::size_t>(g.size()), 1.0);
    for (Vertex v = 0; v < g.size(); ++v) {
        std::int64_t twice = 0;
        for (Vertex w : g.neighbours(v)) twice += sorted_intersection_size(g.neighbours(v), g.neighbours(w));
        const std::int64_t ev = twice / 2;
        r.neighbourhood_edges[static_cast<std::size_t>(v)] = ev;
        r.max_neighbourhood_edges = std::max(r.max_neighbourhood_edges, ev);
        if (g.degree(v) >= 2)
            r.per_vertex_delta[static_cast<std::size_t>(v)] =
                1.0 - static_cast<double>(ev) / static_cast<double>(choose2(g.degree(v)));
    }
    if (denominator == SparsityDenominator::global_max_degree) {
        r.delta = 1.0 - static_cast<double>(r.max_neighbourhood_edges) / static_cast<double>(choose2(delta));
    } else {
        r.delta = *std::min_element(r.per_vertex_delta.begin(), r.per_vertex_delta.end());
    }
    return r;
}

Graph regularize(const Graph& g)
{
    const int delta = g.max_degree();
    if (g.is_regular()) return g;

    const double nd = static_cast<double>(g.size()) * delta;
    const int cap = static_cast<int>(std::ceil(std::log2(std::max(nd, 2.0)))) + delta;
    Graph cur = g;
    for (int round = 0; !cur.is_regular(); ++round) {
        if (round >= cap) throw std::logic_error("regularize: doubling did not terminate within its bound");
        const Vertex n = cur.size();
        std::vector<Edge> es;
        es.reserve(2 * cur.edges().size() + static_cast<std::size_t>(n));
        for (const Edge& e : cur.edges()) {
            es.push_back(e);
            es.push_back({e.first + n, e.second + n});
        }
        for (Vertex v = 0; v < n; ++v)
            if (cur.degree(v) < delta) es.push_back({v, v + n});
        cur = Graph::from_edges(2 * n, es);
    }
    return cur;
}

std::vector<Edge> complement_matching(const Graph& g, int omega)
{
    const Vertex n = g.size();
    std::vector<bool> matched(static_cast<std::size_t>(n), false);
    std::vector<Edge> matching;
    for (Vertex u = 0; u < n; ++u) {
        if (matched[static_cast<std::size_t>(u)]) continue;
        for (Vertex w = u + 1; w < n; ++w) {
            if (matched[static_cast<std::size_t>(w)] || g.adjacent(u, w)) continue;
            matched[static_cast<std::size_t>(u)] = matched[static_cast<std::size_t>(w)] = true;
            matching.push_back({u, w});
            break;
        }
    }
    const auto bound = static_cast<std::size_t>(std::max(0, (n - omega + 1) / 2));
    if (matching.size() < bound)
        throw std::invalid_argument("complement_matching: unmatched vertices form a clique larger than omega=" +
                                    std::to_string(omega));
    return matching;
}

std::vector<Vertex> min_degree_ordering(const Graph& g, std::span<const Vertex> subset)
{
    std::vector<bool> alive(static_cast<std::size_t>(g.size()), false);
    for (Vertex v : subset) alive[static_cast<std::size_t>(v)] = true;
    std::vector<int> degree(static_cast<std::size_t>(g.size()), 0);
    for (Vertex v : subset)
        for (Vertex w : g.neighbours(v))
            if (alive[static_cast<std::size_t>(w)]) ++degree[static_cast<std::size_t>(v)];

    std::vector<Vertex> remaining(subset.begin(), subset.end());
    std::sort(remaining.begin(), remaining.end());
    std::vector<Vertex> order;
    order.reserve(remaining.size());
    while (!remaining.empty()) {
        auto best = remaining.begin();
        for (auto it = remaining.begin(); it != remaining.end(); ++it)
            if (degree[static_cast<std::size_t>(*it)] < degree[static_cast<std::size_t>(*best)]) best = it;
        const Vertex v = *best;
        remaining.erase(best);
        alive[static_cast<std::size_t>(v)] = false;
        for (Vertex w : g.neighbours(v))
            if (alive[static_cast<std::size_t>(w)]) --degree[static_cast<std::size_t>(w)];
        order.push_back(v);
    }
    return order;
}

int list_chromatic_upper(int n, int omega)
{
    if (omega < 1 || omega > n) throw std::invalid_argument("list_chromatic_upper: need 1 <= omega <= n");
    return (n + omega) / 2;
}

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g)
{
    std::vector<Mask> adj(static_cast<std::size_t>(g.size()), 0);
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex w : g.neighbours(v)) adj[static_cast<std::size_t>(v)] |= Mask{1} << w;
    return adj;
}

std::vector<Vertex> mask_vertices(Mask m)
{
    std::vector<Vertex> out;
    while (m) {
        out.push_back(static_cast<Vertex>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

struct CliqueSearch {
    const std::vector<Mask>& adj;
    int best = 0;
    std::vector<Mask> found;

    void expand(Mask r, Mask p, Mask x)
    {
        const int size = std::popcount(r);
        if (size + std::popcount(p) < best) return;
        if (p == 0) {
            if (x == 0) {
                if (size > best) {
                    best = size;
                    found.clear();
                }
                found.push_back(r);
            }
            return;
        }
        // Pivot maximising |P ∩ N(u)|.
        Mask px = p | x;
        int pivot = std::countr_zero(px);
        int pivot_hits = -1;
        for (Mask m = px; m; m &= m - 1) {
            const int u = std::countr_zero(m);
            const int hits = std::popcount(p & adj[static_cast<std::size_t>(u)]);
            if (hits > pivot_hits) {
                pivot_hits = hits;
                pivot = u;
            }
        }
        for (Mask cand = p & ~adj[static_cast<std::size_t>(pivot)]; cand; cand &= cand - 1) {
            const int v = std::countr_zero(cand);
            const Mask bit = Mask{1} << v;
            expand(r | bit, p & adj[static_cast<std::size_t>(v)], x & adj[static_cast<std::size_t>(v)]);
            p &= ~bit;
            x |= bit;
        }
    }
};

}  // namespace

CliqueInfo clique_info(const Graph& g)
{
    if (g.size() > max_exact_clique_vertices)
        throw std::length_error("clique_info: exact search limited to " + std::to_string(max_exact_clique_vertices) +
                                " vertices; use a heuristic clique bound for larger graphs");
    CliqueInfo info;
    if (g.size() == 0) return info;
    const auto adj = adjacency_masks(g);
    CliqueSearch search{adj, 0, {}};
    const Mask all = g.size() == 64 ? ~Mask{0} : (Mask{1} << g.size()) - 1;
    search.expand(0, all, 0);
    info.omega = search.best;
    for (Mask m : search.found) info.maximum_cliques.push_back(mask_vertices(m));
    std::sort(info.maximum_cliques.begin(), info.maximum_cliques.end());
    return info;
}

HittingSetResult hitting_independent_set(const Graph& g, const CliqueInfo& cliques, std::uint64_t node_budget)
{
    if (g.size() > max_exact_clique_vertices)
        throw std::length_error("hitting_independent_set: graph too large for exact search");
    const auto adj = adjacency_masks(g);
    std::vector<Mask> targets;
    for (const auto& c : cliques.maximum_cliques) {
        Mask m = 0;
        for (Vertex v : c) m |= Mask{1} << v;
        targets.push_back(m);
    }

    HittingSetResult result;
    std::optional<Mask> answer;
    bool out_of_budget = false;
    std::function<void(Mask, Mask)> search = [&](Mask chosen, Mask blocked) {
        if (answer || out_of_budget) return;
        if (++result.nodes > node_budget) {
            out_of_budget = true;
            return;
        }
        auto unhit = std::find_if(targets.begin(), targets.end(), [&](Mask t) { return (t & chosen) == 0; });
        if (unhit == targets.end()) {
            answer = chosen;
            return;
        }
        for (Mask cand = *unhit & ~blocked; cand; cand &= cand - 1) {
            const int v = std::countr_zero(cand);
            const Mask bit = Mask{1} << v;
            search(chosen | bit, blocked | bit | adj[static_cast<std::size_t>(v)]);
            if (answer || out_of_budget) return;
        }
    };
    search(0, 0);

    if (answer) {
        result.set = mask_vertices(*answer);
        result.search_exhausted = false;
        return result;
    }
    if (!out_of_budget) {
        result.search_exhausted = true;
        result.diagnostic = "no independent set meets all " + std::to_string(targets.size()) + " maximum cliques";
        return result;
    }

    // Greedy fallback: smallest available vertex of each unhit clique.
    Mask chosen = 0;
    Mask blocked = 0;
    for (Mask t : targets) {
        if (t & chosen) continue;
        const Mask cand = t & ~blocked;
        if (!cand) {
            result.diagnostic = "exact search exceeded its node budget and greedy fallback got stuck";
            return result;
        }
        const int v = std::countr_zero(cand);
        chosen |= Mask{1} << v;
        blocked |= (Mask{1} << v) | adj[static_cast<std::size_t>(v)];
    }
    result.set = mask_vertices(chosen);
    result.diagnostic = "exact search exceeded its node budget; greedy fallback succeeded";
    return result;
}

CliqueReduction reduce_by_cliques(const Graph& g)
{
    CliqueReduction out;
    out.graph = g;
    out.original_ids.resize(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v) out.original_ids[static_cast<std::size_t>(v)] = v;

    CliqueInfo info = clique_info(out.graph);
    // omega > 2/3 (Delta + 1), kept in integers.
    while (3 * info.omega > 2 * (out.graph.max_degree() + 1)) {
        const Graph& cur = out.graph;
        auto hit = hitting_independent_set(cur, info);
        if (!hit.set)
            throw ReductionError("reduce_by_cliques: round " + std::to_string(out.peeled + 1) + " (omega=" +
                                 std::to_string(info.omega) + ", Delta=" + std::to_string(cur.max_degree()) +
                                 "): " + hit.diagnostic);

        // Extend to a maximal independent set in ascending id order.
        std::vector<bool> in_set(static_cast<std::size_t>(cur.size()), false);
        std::vector<bool> blocked(static_cast<std::size_t>(cur.size()), false);
        auto take = [&](Vertex v) {
            in_set[static_cast<std::size_t>(v)] = blocked[static_cast<std::size_t>(v)] = true;
            for (Vertex w : cur.neighbours(v)) blocked[static_cast<std::size_t>(w)] = true;
        };
        for (Vertex v : *hit.set) take(v);
        for (Vertex v = 0; v < cur.size(); ++v)
            if (!blocked[static_cast<std::size_t>(v)]) take(v);

        ReductionRound round;
        round.omega_before = info.omega;
        round.max_degree_before = cur.max_degree();
        std::vector<Vertex> keep;
        std::vector<Vertex> kept_ids;
        for (Vertex v = 0; v < cur.size(); ++v) {
            if (in_set[static_cast<std::size_t>(v)]) {
                round.removed.push_back(out.original_ids[static_cast<std::size_t>(v)]);
            } else {
                keep.push_back(v);
                kept_ids.push_back(out.original_ids[static_cast<std::size_t>(v)]);
            }
        }
        Graph next = cur.induced(keep);
        info = clique_info(next);
        round.omega_after = info.omega;
        round.max_degree_after = next.max_degree();

        if (round.omega_after != round.omega_before - 1)
            throw std::logic_error("reduce_by_cliques: clique number did not drop by exactly one");
        if (next.size() > 0 && round.max_degree_after > round.max_degree_before - 1)
            throw std::logic_error("reduce_by_cliques: maximum degree did not drop");

        out.graph = std::move(next);
        out.original_ids = std::move(kept_ids);
        out.rounds.push_back(std::move(round));
        ++out.peeled;
    }
    return out;
}

GreedyResult greedy_colour(const Graph& g, std::span<const Vertex> order,
                           const std::vector<std::vector<Colour>>& palettes)
{
    if (palettes.size() != static_cast<std::size_t>(g.size()))
        throw std::invalid_argument("greedy_colour: one palette per vertex required");
    GreedyResult r;
    r.colouring.assign(static_cast<std::size_t>(g.size()), std::nullopt);
    std::vector<Colour> taken;
    for (Vertex v : order) {
        taken.clear();
        for (Vertex w : g.neighbours(v))
            if (const auto& c = r.colouring[static_cast<std::size_t>(w)]) taken.push_back(*c);
        std::sort(taken.begin(), taken.end());
        std::vector<Colour> palette = palettes[static_cast<std::size_t>(v)];
        std::sort(palette.begin(), palette.end());
        auto pick = std::find_if(palette.begin(), palette.end(),
                                 [&](Colour c) { return !std::binary_search(taken.begin(), taken.end(), c); });
        if (pick == palette.end())
            r.failed.push_back(v);
        else
            r.colouring[static_cast<std::size_t>(v)] = *pick;
    }
    return r;
}

}  // namespace sparsecol
