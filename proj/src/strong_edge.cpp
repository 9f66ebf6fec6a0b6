#include "sparsecol/strong_edge.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sparsecol/correspondence.hpp"
#include "sparsecol/graph_ops.hpp"
#include "sparsecol/ncp.hpp"

namespace sparsecol {

LineGraphSquare line_graph_square(const Graph& h)
{
    if (h.edge_count() == 0) throw std::invalid_argument("line_graph_square: host graph has no edges");
    std::vector<Edge> edges;
    std::vector<EdgeId> stamp(static_cast<std::size_t>(h.edge_count()), -1);
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        stamp[static_cast<std::size_t>(e)] = e;
        // f is within distance 2 of e = ab iff f has an end in N(a) ∪ N(b).
        for (Vertex end : {h.edge(e).first, h.edge(e).second})
            for (Vertex x : h.neighbours(end))
                for (EdgeId f : h.incident_edges(x)) {
                    if (stamp[static_cast<std::size_t>(f)] == e) continue;
                    stamp[static_cast<std::size_t>(f)] = e;
                    if (e < f) edges.push_back({e, f});
                }
    }
    return {Graph::from_edges(h.edge_count(), edges), h.edges()};
}

Graph c5_blowup(int k)
{
    if (k < 1) throw std::invalid_argument("c5_blowup: k must be >= 1");
    std::vector<Edge> edges;
    for (int g = 0; g < 5; ++g) {
        const int h = (g + 1) % 5;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) edges.push_back(make_edge(g * k + i, h * k + j));
    }
    return Graph::from_edges(5 * k, edges);
}

StrongProfile strong_profile(const Graph& h, EdgeId e)
{
    StrongProfile p;
    p.edge = h.edge(e);
    p.max_degree = h.max_degree();
    const Vertex u = p.edge.first;
    const Vertex v = p.edge.second;
    const auto n = static_cast<std::size_t>(h.size());

    std::vector<char> role(n, 0);  // 1: u or v, 2: X, 3: Y
    role[static_cast<std::size_t>(u)] = role[static_cast<std::size_t>(v)] = 1;
    for (Vertex end : {u, v})
        for (Vertex w : h.neighbours(end))
            if (role[static_cast<std::size_t>(w)] == 0) {
                role[static_cast<std::size_t>(w)] = 2;
                p.x.push_back(w);
            }
    std::sort(p.x.begin(), p.x.end());
    for (Vertex x : p.x)
        for (Vertex w : h.neighbours(x))
            if (role[static_cast<std::size_t>(w)] == 0) {
                role[static_cast<std::size_t>(w)] = 3;
                p.y.push_back(w);
            }
    std::sort(p.y.begin(), p.y.end());

    p.common = h.common_neighbours(u, v);
    for (Vertex x : p.x)
        for (Vertex w : h.neighbours(x))
            if (w > x && role[static_cast<std::size_t>(w)] == 2) ++p.x_edges;
    for (Vertex y : p.y) {
        std::int64_t dx = 0;
        for (Vertex w : h.neighbours(y)) dx += role[static_cast<std::size_t>(w)] == 2 ? 1 : 0;
        p.gamma_sum += dx * (p.max_degree - dx);
    }

    // Edges touching {u, v} ∪ X, other than uv itself.
    std::int64_t incidences = 0;
    std::int64_t inside = 0;
    for (Vertex s = 0; s < h.size(); ++s) {
        if (role[static_cast<std::size_t>(s)] != 1 && role[static_cast<std::size_t>(s)] != 2) continue;
        incidences += h.degree(s);
        for (Vertex w : h.neighbours(s)) {
            const char r = role[static_cast<std::size_t>(w)];
            if (w > s && (r == 1 || r == 2)) ++inside;
        }
    }
    p.strong_degree = incidences - inside - 1;

    std::vector<char> in_y(n, 0);
    for (Vertex y : p.y) in_y[static_cast<std::size_t>(y)] = 1;
    for (std::size_t i = 0; i < p.x.size(); ++i)
        for (std::size_t j = i + 1; j < p.x.size(); ++j) {
            std::int64_t m = 0;
            const auto a = h.neighbours(p.x[i]);
            const auto b = h.neighbours(p.x[j]);
            for (std::size_t s = 0, t = 0; s < a.size() && t < b.size();) {
                if (a[s] < b[t]) {
                    ++s;
                } else if (b[t] < a[s]) {
                    ++t;
                } else {
                    m += in_y[static_cast<std::size_t>(a[s])];
                    ++s;
                    ++t;
                }
            }
            p.c4 += m * (m - 1) / 2;
        }

    if (p.max_degree > 0) {
        const double d = p.max_degree;
        p.alpha = p.common / d;
        p.beta = static_cast<double>(p.x_edges) / (d * d);
        p.gamma = static_cast<double>(p.gamma_sum) / (d * d * d);
    }
    return p;
}

double strong_degree_bound(const StrongProfile& p)
{
    const double d = p.max_degree;
    return (2 - p.alpha - p.beta) * d * d - 2 * d;
}

double c4_lower_bound(const StrongProfile& p)
{
    const double d = p.max_degree;
    const double a = 2 - p.alpha;
    const double q = 2 - p.alpha - 2 * p.beta - p.gamma;
    return 0.5 * (q * q / (2 * a * a) * std::pow(d, 4) - (7 - p.gamma / 2) * std::pow(d, 3));
}

double neighbourhood_edge_bound_basic(const StrongProfile& p)
{
    const double d = p.max_degree;
    return (2 - p.alpha - p.beta - p.gamma / 2) * std::pow(d, 4) - 2.0 * static_cast<double>(p.c4) +
           (p.gamma / 2 - 2) * std::pow(d, 3);
}

double strong_neighbourhood_edge_bound(const StrongProfile& p)
{
    const double s = 2 - p.alpha - p.beta;
    if (!(s > 0)) throw std::domain_error("strong_neighbourhood_edge_bound: requires alpha + beta < 2");
    return neighbourhood_edge_bound_basic(p) - p.gamma * p.gamma / (2 * s) * std::pow(p.max_degree, 4.0);
}

FCore f_core(const Graph& g, const bounds::Rational& threshold)
{
    // Degrees are integers, so d >= threshold iff d >= ceil(threshold).
    const boost::multiprecision::cpp_int num = numerator(threshold);
    const boost::multiprecision::cpp_int den = denominator(threshold);
    boost::multiprecision::cpp_int q = num / den;  // truncates toward zero
    if (q * den < num) ++q;
    const long long need = q <= 0 ? 0 : q.convert_to<long long>();
    const auto n = static_cast<std::size_t>(g.size());
    std::vector<long long> degree(n);
    std::vector<bool> alive(n, true);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < g.size(); ++v) {
        degree[static_cast<std::size_t>(v)] = g.degree(v);
        if (degree[static_cast<std::size_t>(v)] < need) {
            alive[static_cast<std::size_t>(v)] = false;
            queue.push_back(v);
        }
    }
    FCore out;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        out.peel_order.push_back(v);
        for (Vertex w : g.neighbours(v)) {
            if (!alive[static_cast<std::size_t>(w)]) continue;
            if (--degree[static_cast<std::size_t>(w)] < need) {
                alive[static_cast<std::size_t>(w)] = false;
                queue.push_back(w);
            }
        }
    }
    for (Vertex v = 0; v < g.size(); ++v)
        if (alive[static_cast<std::size_t>(v)]) out.core.push_back(v);
    return out;
}

double f_core_edge_bound(double eta, int max_degree)
{
    return (31.0 / 6 - 128 / (3 * (10 - 3 * eta)) + 4 * eta - eta * eta) * std::pow(max_degree, 4.0);
}

namespace {

bounds::Rational core_threshold(double eta, int max_degree)
{
    const bounds::Rational d = max_degree;
    return (2 - bounds::exact_decimal(eta)) * d * d;
}

}  // namespace

FCoreDensityReport f_core_density_check(const Graph& h, double eta)
{
    if (!(eta >= 0 && eta <= 0.3)) throw std::domain_error("f_core_density_check: eta must lie in [0, 0.3]");
    if (!h.is_regular() || h.edge_count() == 0)
        throw std::invalid_argument("f_core_density_check: host graph must be regular with at least one edge");
    FCoreDensityReport r;
    r.eta = eta;
    r.max_degree = h.max_degree();
    r.bound = f_core_edge_bound(eta, r.max_degree);
    const LineGraphSquare l2 = line_graph_square(h);
    const FCore core = f_core(l2.graph, core_threshold(eta, r.max_degree));
    r.core_size = static_cast<int>(core.core.size());

    std::vector<char> in_core(static_cast<std::size_t>(l2.graph.size()), 0);
    for (Vertex v : core.core) in_core[static_cast<std::size_t>(v)] = 1;
    std::vector<char> in_fe(in_core.size(), 0);
    for (Vertex e : core.core) {
        std::vector<Vertex> fe;
        for (Vertex f : l2.graph.neighbours(e))
            if (in_core[static_cast<std::size_t>(f)]) fe.push_back(f);
        for (Vertex f : fe) in_fe[static_cast<std::size_t>(f)] = 1;
        std::int64_t twice = 0;
        for (Vertex f : fe)
            for (Vertex w : l2.graph.neighbours(f)) twice += in_fe[static_cast<std::size_t>(w)];
        for (Vertex f : fe) in_fe[static_cast<std::size_t>(f)] = 0;
        const std::int64_t count = twice / 2;
        if (count > r.max_count || r.worst_edge < 0) {
            r.max_count = count;
            r.worst_edge = e;
        }
        if (static_cast<double>(count) > r.bound) r.holds = false;
    }
    r.max_ratio = r.core_size > 0 && r.bound > 0 ? static_cast<double>(r.max_count) / r.bound : 0.0;
    return r;
}

namespace {

// First-fit from colour 1 in the given order, on top of existing colours.
void first_fit(const Graph& g, std::span<const Vertex> order, std::vector<int>& colour)
{
    std::vector<int> used;
    for (Vertex v : order) {
        used.clear();
        for (Vertex w : g.neighbours(v))
            if (colour[static_cast<std::size_t>(w)] > 0) used.push_back(colour[static_cast<std::size_t>(w)]);
        std::sort(used.begin(), used.end());
        int c = 1;
        for (int x : used) {
            if (x == c) ++c;
            else if (x > c) break;
        }
        colour[static_cast<std::size_t>(v)] = c;
    }
}

}  // namespace

StrongColouring strong_edge_colour(const Graph& h, double eta, std::uint64_t seed)
{
    if (!(eta >= 0 && eta < 2)) throw std::domain_error("strong_edge_colour: eta must lie in [0, 2)");
    const LineGraphSquare l2 = line_graph_square(h);
    const int max_degree = h.max_degree();
    const FCore core = f_core(l2.graph, core_threshold(eta, max_degree));

    StrongColouring out;
    out.f_core_size = static_cast<int>(core.core.size());
    std::vector<int> colour(static_cast<std::size_t>(l2.graph.size()), 0);

    if (!core.core.empty()) {
        const Graph gf = l2.graph.induced(core.core);
        bool done = false;
        try {
            constexpr double eps = 0.0825;
            const int df = gf.max_degree();
            const int k = std::max(1, static_cast<int>(std::floor((1 - eps) * df)));
            // Identity maps are stored pair by pair.
            if (static_cast<double>(k) * gf.edge_count() > max_assignment_pairs)
                throw std::length_error("core assignment would hold " +
                                        std::to_string(static_cast<long long>(k) * gf.edge_count()) + " colour pairs");
            const double sparsity = df >= 2 ? local_sparsity(gf).delta : 1.0;
            const IterationSchedule schedule = default_schedule(eps, sparsity, df);
            const IterativeResult r =
                iterative_colour(gf, CorrespondenceAssignment::identity(gf, k), schedule, seed);
            out.used_iterative = true;
            if (r.success) {
                for (std::size_t i = 0; i < core.core.size(); ++i)
                    colour[static_cast<std::size_t>(core.core[i])] = *r.colouring[i] + 1;
                done = true;
            } else {
                out.warning = "iterative colouring of the core failed: " + r.diagnostic;
            }
        } catch (const std::exception& ex) {
            out.warning = std::string("iterative colouring of the core not applicable: ") + ex.what();
        }
        if (!done) {
            out.fallback = true;
            first_fit(l2.graph, core.core, colour);
        }
    }

    std::vector<Vertex> reverse(core.peel_order.rbegin(), core.peel_order.rend());
    first_fit(l2.graph, reverse, colour);

    out.colours = colour;
    out.num_colours = colour.empty() ? 0 : *std::max_element(colour.begin(), colour.end());
    out.ratio_to_delta_sq = max_degree > 0 ? out.num_colours / (static_cast<double>(max_degree) * max_degree) : 0.0;
    if (!is_strong_edge_colouring(h, out.colours))
        throw std::logic_error("strong_edge_colour: produced an invalid strong edge colouring");
    return out;
}

bool is_strong_edge_colouring(const Graph& h, const std::vector<int>& colours)
{
    if (colours.size() != static_cast<std::size_t>(h.edge_count())) return false;
    if (std::any_of(colours.begin(), colours.end(), [](int c) { return c < 1; })) return false;
    // Two edges are within distance 2 iff both touch the ends of one edge ab.
    std::vector<int> seen;
    for (const Edge& ab : h.edges()) {
        seen.clear();
        for (EdgeId f : h.incident_edges(ab.first)) seen.push_back(colours[static_cast<std::size_t>(f)]);
        for (EdgeId f : h.incident_edges(ab.second))
            if (h.edge(f).other(ab.second) != ab.first) seen.push_back(colours[static_cast<std::size_t>(f)]);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
}

}  // namespace sparsecol
