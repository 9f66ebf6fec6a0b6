#include "sparsecol/ncp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "sparsecol/bounds.hpp"
#include "sparsecol/graph_ops.hpp"
#include "sparsecol/rng.hpp"

namespace sparsecol {

RoundOutcome resolve_round(const Graph& g, const CorrespondenceAssignment& c, std::vector<Colour> f1,
                           std::vector<Vertex> direction)
{
    const auto n = static_cast<std::size_t>(g.size());
    if (f1.size() != n || direction.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument("resolve_round: draws do not match the graph");
    RoundOutcome o;
    o.f1 = std::move(f1);
    o.direction = std::move(direction);
    o.kept.assign(n, true);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        if (c.map(e, edge.first, o.f1[static_cast<std::size_t>(edge.first)]) ==
            o.f1[static_cast<std::size_t>(edge.second)])
            o.kept[static_cast<std::size_t>(o.direction[static_cast<std::size_t>(e)])] = false;
    }
    o.f.resize(n);
    for (std::size_t u = 0; u < n; ++u)
        if (o.kept[u]) o.f[u] = o.f1[u];
    return o;
}

RoundOutcome run_round(const Graph& g, const CorrespondenceAssignment& c, std::uint64_t seed,
                       std::uint64_t round_index, Totality totality)
{
    if (!c.matches(g)) throw std::invalid_argument("run_round: assignment does not match graph");
    if (totality == Totality::required && !c.is_total())
        throw std::invalid_argument("run_round: assignment is not total; totalize it first");
    const CounterRng rng(seed);
    std::vector<Colour> f1(static_cast<std::size_t>(g.size()));
    for (Vertex u = 0; u < g.size(); ++u) {
        const auto& set = c.colours(u);
        if (set.empty()) throw std::invalid_argument("run_round: vertex " + std::to_string(u) + " has no colours");
        f1[static_cast<std::size_t>(u)] =
            set[rng.uniform(Stream::tentative_colour, round_index, static_cast<std::uint64_t>(u), set.size())];
    }
    std::vector<Vertex> direction(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        direction[static_cast<std::size_t>(e)] =
            rng.coin(Stream::direction, round_index, static_cast<std::uint64_t>(e)) ? g.edge(e).second
                                                                                   : g.edge(e).first;
    return resolve_round(g, c, std::move(f1), std::move(direction));
}

double keep_probability(int k, int degree)
{
    if (k < 1) throw std::invalid_argument("keep_probability: k must be >= 1");
    return std::pow(1.0 - 1.0 / (2.0 * k), degree);
}

PairIndex::PairIndex(const Graph& g) : through_(static_cast<std::size_t>(g.size()))
{
    std::unordered_map<std::uint64_t, std::int32_t> id;
    auto key = [](Vertex a, Vertex b) { return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b); };
    for (Vertex w = 0; w < g.size(); ++w) {
        const auto nb = g.neighbours(w);
        auto& list = through_[static_cast<std::size_t>(w)];
        list.reserve(nb.size() * (nb.size() + 1) / 2);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i; j < nb.size(); ++j) {
                auto [it, fresh] = id.try_emplace(key(nb[i], nb[j]), static_cast<std::int32_t>(pairs_.size()));
                if (fresh) {
                    pairs_.emplace_back(nb[i], nb[j]);
                    common_.push_back(0);
                }
                ++common_[static_cast<std::size_t>(it->second)];
                list.push_back(it->second);
            }
        }
    }
}

std::vector<int> PairIndex::restricted_common(const std::vector<bool>& in_a) const
{
    std::vector<int> out(pairs_.size(), 0);
    for (std::size_t w = 0; w < through_.size(); ++w)
        if (in_a[w])
            for (auto p : through_[w]) ++out[static_cast<std::size_t>(p)];
    return out;
}

RoundStats round_stats(const Graph& g, const CorrespondenceAssignment& c, const RoundOutcome& o,
                       const PairIndex* index, bool with_pairs)
{
    const auto n = static_cast<std::size_t>(g.size());
    if (!c.matches(g) || o.f1.size() != n || o.kept.size() != n || o.f.size() != n ||
        o.direction.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument("round_stats: outcome does not belong to this instance");

    RoundStats s;
    s.col.assign(n, 0);
    s.dist.assign(n, 0);
    s.p.assign(n, 0);
    s.t.assign(n, 0);
    std::vector<std::pair<Colour, Vertex>> seen;
    std::vector<Vertex> group;
    for (Vertex u = 0; u < g.size(); ++u) {
        seen.clear();
        for (EdgeId e : g.incident_edges(u)) {
            const Vertex v = g.edge(e).other(u);
            if (!o.kept[static_cast<std::size_t>(v)]) continue;
            ++s.col[static_cast<std::size_t>(u)];
            if (auto x = c.map(e, v, o.f1[static_cast<std::size_t>(v)])) seen.emplace_back(*x, v);
        }
        std::sort(seen.begin(), seen.end());
        for (std::size_t i = 0; i < seen.size();) {
            std::size_t j = i;
            group.clear();
            while (j < seen.size() && seen[j].first == seen[i].first) group.push_back(seen[j++].second);
            ++s.dist[static_cast<std::size_t>(u)];
            for (std::size_t a = 0; a < group.size(); ++a)
                for (std::size_t b = a + 1; b < group.size(); ++b) {
                    if (g.adjacent(group[a], group[b])) continue;
                    ++s.p[static_cast<std::size_t>(u)];
                    for (std::size_t d = b + 1; d < group.size(); ++d)
                        if (!g.adjacent(group[a], group[d]) && !g.adjacent(group[b], group[d]))
                            ++s.t[static_cast<std::size_t>(u)];
                }
            i = j;
        }
    }

    std::vector<bool> uncoloured(n);
    for (std::size_t u = 0; u < n; ++u) uncoloured[u] = !o.kept[u];
    for (Vertex u = 0; u < g.size(); ++u) {
        if (!uncoloured[static_cast<std::size_t>(u)]) continue;
        int d = 0;
        for (Vertex v : g.neighbours(u)) d += uncoloured[static_cast<std::size_t>(v)] ? 1 : 0;
        s.residual_max_degree = std::max(s.residual_max_degree, d);
        const int left = static_cast<int>(c.colours(u).size()) - s.dist[static_cast<std::size_t>(u)];
        s.residual_min_list = s.residual_min_list ? std::min(*s.residual_min_list, left) : left;
    }

    if (!with_pairs) return s;
    std::optional<PairIndex> local;
    if (!index) index = &local.emplace(g);
    s.pairs = index->pairs();
    s.pair_common = index->common();
    s.pair_uncoloured = index->restricted_common(uncoloured);
    return s;
}

double asymptotic_slack(int delta)
{
    if (delta < 1) return 0.0;
    return std::sqrt(static_cast<double>(delta)) * std::pow(std::log(static_cast<double>(delta)), 5);
}

double practical_slack(int delta, double c)
{
    if (delta < 1) return 0.0;
    // ln clamped at 1 so that the slack stays positive for Delta < 3.
    const double l = std::max(1.0, std::log(static_cast<double>(delta)));
    return c * std::sqrt(delta * l);
}

QuasirandomReport quasirandom_check(const Graph& g, const std::vector<bool>& uncoloured, double mu, double slack,
                                    const PairIndex* index)
{
    if (uncoloured.size() != static_cast<std::size_t>(g.size()))
        throw std::invalid_argument("quasirandom_check: membership vector has the wrong size");
    std::optional<PairIndex> local;
    if (!index) index = &local.emplace(g);
    const auto inside = index->restricted_common(uncoloured);
    QuasirandomReport r;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        const double dev = std::abs(inside[i] - mu * index->common()[i]);
        if (dev > slack) {
            r.ok = false;
            ++r.violations;
        }
        if (dev > r.worst_deviation || r.worst_pair.first < 0) {
            r.worst_deviation = dev;
            r.worst_pair = index->pairs()[i];
        }
    }
    return r;
}

double savings_bound(int k, int delta, double sparsity)
{
    if (k < 1) throw std::invalid_argument("savings_bound: k must be >= 1");
    const double d = delta;
    const double kk = k;
    return (d * sparsity / (2 * kk) * std::exp(-d / kk) -
            d * d * sparsity * std::sqrt(sparsity) / (6 * kk * kk) * std::exp(-7 * d / (8 * kk))) *
           d;
}

RoundParams make_round_params(ThresholdProfile profile, int k, int delta, double sparsity, double gamma, double tau,
                              double c)
{
    RoundParams p;
    p.gamma = gamma;
    p.mu = 1.0 - keep_probability(k, delta);
    switch (profile) {
    case ThresholdProfile::asymptotic:
        p.slack = asymptotic_slack(delta);
        p.a_threshold = delta > 1 ? (1 - 1 / std::log(static_cast<double>(delta))) * savings_bound(k, delta, sparsity)
                                  : -std::numeric_limits<double>::infinity();
        break;
    case ThresholdProfile::practical:
        p.slack = practical_slack(delta, c);
        p.a_threshold = tau * savings_bound(k, delta, sparsity);
        break;
    case ThresholdProfile::vacuous:
        p.slack = std::numeric_limits<double>::infinity();
        p.a_threshold = -std::numeric_limits<double>::infinity();
        break;
    }
    return p;
}

RoundAttempt attempt_round(const Graph& g, const CorrespondenceAssignment& c, const RoundParams& params,
                           std::uint64_t seed, int max_restarts, std::uint64_t round_index)
{
    if (max_restarts < 0) throw std::invalid_argument("attempt_round: max_restarts must be >= 0");
    const PairIndex index(g);
    RoundAttempt best;
    int best_score = std::numeric_limits<int>::max();
    for (int attempt = 0; attempt <= max_restarts; ++attempt) {
        RoundOutcome o = run_round(g, c, derive_seed(seed, Stream::restart, static_cast<std::uint64_t>(attempt)),
                                   round_index);
        RoundStats s = round_stats(g, c, o, &index, false);
        int a_violations = 0;
        Vertex worst = -1;
        double worst_gap = 0.0;
        for (Vertex u = 0; u < g.size(); ++u) {
            const double gap = params.a_threshold - static_cast<double>(s.p[static_cast<std::size_t>(u)] -
                                                                        s.t[static_cast<std::size_t>(u)]);
            if (gap > 0) {
                ++a_violations;
                if (gap > worst_gap) {
                    worst_gap = gap;
                    worst = u;
                }
            }
        }
        std::vector<bool> uncoloured(o.kept.size());
        for (std::size_t u = 0; u < o.kept.size(); ++u) uncoloured[u] = !o.kept[u];
        QuasirandomReport q = quasirandom_check(g, uncoloured, params.mu, params.slack, &index);

        const int score = a_violations + q.violations;
        if (score < best_score) {
            best_score = score;
            best.outcome = std::move(o);
            best.stats = std::move(s);
            best.a_violations = a_violations;
            best.b_violations = q.violations;
            best.worst_vertex = worst;
            best.quasirandom = q;
        }
        best.attempts = attempt + 1;
        if (score == 0) {
            best.success = true;
            break;
        }
    }

    const int k = c.min_list_size();
    const double need = k - (1 - params.mu - params.gamma) * g.max_degree();
    best.savings_met = !best.stats.residual_min_list || *best.stats.residual_min_list >= need;
    if (!best.success) {
        best.diagnostic = "restart budget exhausted after " + std::to_string(best.attempts) +
                          " attempts; best attempt has " + std::to_string(best.a_violations) +
                          " savings violations and " + std::to_string(best.b_violations) +
                          " quasirandomness violations";
        if (best.b_violations > 0)
            best.diagnostic += "; worst pair (" + std::to_string(best.quasirandom.worst_pair.first) + "," +
                               std::to_string(best.quasirandom.worst_pair.second) + ") deviates by " +
                               std::to_string(best.quasirandom.worst_deviation) + " > " +
                               std::to_string(params.slack);
    }
    return best;
}

namespace {

long long floor_tolerant(double x) { return static_cast<long long>(std::floor(x + 1e-9 * std::max(1.0, std::abs(x)))); }
long long ceil_tolerant(double x) { return static_cast<long long>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)))); }

double gamma_of(double eps, double beta) { return eps * std::exp(-1 / (2 * (1 - eps))) + beta; }

}  // namespace

IterationSchedule build_schedule(double eps, double delta, double beta, double delta_prime, double r0)
{
    if (!(eps > 0 && eps < 0.5)) throw ScheduleError("schedule: eps must lie in (0, 0.5)");
    if (!(delta > 0 && delta <= 1)) throw ScheduleError("schedule: delta must lie in (0, 1]");
    if (!(delta_prime > 0 && delta_prime <= delta)) throw ScheduleError("schedule: need 0 < delta' <= delta");
    if (!(beta > 0)) throw ScheduleError("schedule: beta must be positive");
    if (!(r0 >= 1)) throw ScheduleError("schedule: r0 must be >= 1");

    IterationSchedule s;
    s.eps = eps;
    s.delta = delta;
    s.delta_prime = delta_prime;
    s.beta = beta;
    s.eps_prime = 1 - static_cast<double>(floor_tolerant((1 - eps) * r0)) / r0;
    if (!(s.eps_prime < 0.5)) throw ScheduleError("schedule: r0 too small, eps' reaches 1/2");
    const double gap = bounds::g_func(s.eps_prime, delta_prime) - gamma_of(s.eps_prime, beta);
    if (!(gap > 0))
        throw ScheduleError("schedule: beta infeasible, eps' e^{-1/(2(1-eps'))} + beta >= g(eps', delta') by " +
                            std::to_string(-gap));
    s.T = static_cast<int>(ceil_tolerant(2 * s.eps_prime / beta)) + 1;

    double r = r0;
    for (int i = 0; i <= s.T; ++i) {
        ScheduleRow row;
        row.i = i;
        row.eps = s.eps_prime - i * beta / 2;
        row.gamma = gamma_of(row.eps, beta);
        row.delta = delta - static_cast<double>(i) / s.T * (delta - delta_prime);
        row.r = r;
        row.k = (1 - row.eps) * r;
        // Once 2k <= 1 the base is clamped at 0 and mu is 1.
        row.mu = 1 - std::pow(std::max(0.0, 1 - 1 / (2 * row.k)), r);
        if (!(row.gamma < bounds::g_func(row.eps, row.delta)))
            throw ScheduleError("schedule: row " + std::to_string(i) + " has gamma_i >= g(eps_i, delta_i)");
        s.rows.push_back(row);
        r = (row.mu + beta / 2) * r;
    }
    if (!(s.rows.back().eps < 0)) throw ScheduleError("schedule: eps_T is not negative");
    return s;
}

IterationSchedule default_schedule(double eps, double delta, double r0)
{
    if (!(eps > 0 && eps < 0.5)) throw ScheduleError("schedule: eps must lie in (0, 0.5)");
    if (!(r0 >= 1)) throw ScheduleError("schedule: r0 must be >= 1");
    const double eps_prime = 1 - static_cast<double>(floor_tolerant((1 - eps) * r0)) / r0;
    const double delta_prime = 0.95 * delta;
    if (!(eps_prime < 0.5)) throw ScheduleError("schedule: r0 too small, eps' reaches 1/2");
    const double room = bounds::g_func(eps_prime, delta_prime) - gamma_of(eps_prime, 0.0);
    if (!(room > 0))
        throw ScheduleError("schedule: (eps', 0.95 delta) violates the sparsity condition; no beta exists");
    return build_schedule(eps, delta, 0.5 * room, delta_prime, r0);
}

namespace {

// Assignment on the regularized graph h: every vertex copies the colours of
// its base vertex x mod n, copy edges get the identity.
CorrespondenceAssignment lift_assignment(const Graph& base, const CorrespondenceAssignment& c, const Graph& h)
{
    const Vertex n = base.size();
    std::vector<std::vector<Colour>> sets;
    for (Vertex x = 0; x < h.size(); ++x) sets.push_back(c.colours(x % n));
    std::vector<std::vector<ColourPair>> maps;
    for (const Edge& e : h.edges()) {
        const Vertex a = e.first % n;
        const Vertex b = e.second % n;
        std::vector<ColourPair> pairs;
        if (a == b) {
            for (Colour x : c.colours(a)) pairs.emplace_back(x, x);
        } else {
            pairs = c.edge_map(base.edge_id(a, b)).forward;
        }
        maps.push_back(std::move(pairs));
    }
    return CorrespondenceAssignment(h, std::move(sets), std::move(maps));
}

}  // namespace

IterativeResult iterative_colour(const Graph& g, const CorrespondenceAssignment& c, const IterationSchedule& schedule,
                                 std::uint64_t seed, const IterativeOptions& options)
{
    if (!c.matches(g)) throw std::invalid_argument("iterative_colour: assignment does not match graph");
    IterativeResult result;
    result.colouring.assign(static_cast<std::size_t>(g.size()), std::nullopt);

    Graph cur = g;
    CorrespondenceAssignment cur_c = c;
    std::vector<Vertex> ids(static_cast<std::size_t>(g.size()));
    std::iota(ids.begin(), ids.end(), 0);

    for (int i = 0; i < schedule.T && cur.size() > 0; ++i) {
        const int max_degree = cur.max_degree();
        const int k = cur_c.min_list_size();
        if (k > max_degree) break;
        if (k == 0) {
            result.failed_iteration = i;
            result.diagnostic = "iteration " + std::to_string(i) + ": a residual colour set is empty";
            return result;
        }

        IterationTrace tr;
        tr.iteration = i;
        tr.vertices = cur.size();
        tr.max_degree = max_degree;
        tr.k = k;
        double sparsity = 1.0;
        tr.sparsity = std::numeric_limits<double>::quiet_NaN();
        if (max_degree >= 2) sparsity = tr.sparsity = local_sparsity(cur).delta;

        const CorrespondenceAssignment total = totalize(truncate(cur_c, k));
        const Graph h = regularize(cur);
        const CorrespondenceAssignment lifted = lift_assignment(cur, total, h);
        tr.regularized_size = h.size();

        const double gamma = schedule.rows.at(static_cast<std::size_t>(i)).gamma;
        const RoundParams params =
            make_round_params(options.profile, k, max_degree, sparsity, gamma, options.tau, options.c);
        const RoundAttempt attempt = attempt_round(h, lifted, params, derive_seed(seed, Stream::iteration, i),
                                                   options.max_restarts, static_cast<std::uint64_t>(i));
        tr.restarts = attempt.attempts - 1;
        tr.round_success = attempt.success;
        if (!attempt.success && !options.best_effort) {
            result.trace.push_back(tr);
            result.failed_iteration = i;
            result.diagnostic = "iteration " + std::to_string(i) + ": " + attempt.diagnostic;
            return result;
        }

        PartialColouring f(attempt.outcome.f.begin(), attempt.outcome.f.begin() + cur.size());
        for (Vertex v = 0; v < cur.size(); ++v) {
            if (!f[static_cast<std::size_t>(v)]) continue;
            result.colouring[static_cast<std::size_t>(ids[static_cast<std::size_t>(v)])] = f[static_cast<std::size_t>(v)];
            ++tr.coloured;
        }
        ResidualInstance next = residual_assignment(cur, cur_c, f);
        std::vector<Vertex> next_ids;
        for (Vertex v : next.original_ids) next_ids.push_back(ids[static_cast<std::size_t>(v)]);
        cur = std::move(next.graph);
        cur_c = std::move(next.assignment);
        ids = std::move(next_ids);
        tr.k_prime = cur_c.min_list_size();
        tr.residual_max_degree = cur.max_degree();
        tr.residual_sparsity =
            tr.residual_max_degree >= 2 ? local_sparsity(cur).delta : std::numeric_limits<double>::quiet_NaN();
        result.trace.push_back(tr);
    }

    std::vector<Vertex> order(static_cast<std::size_t>(cur.size()));
    std::iota(order.begin(), order.end(), 0);
    const GreedyResult finish = greedy_correspondence(cur, cur_c, order, {});
    for (Vertex v = 0; v < cur.size(); ++v)
        if (const auto& x = finish.colouring[static_cast<std::size_t>(v)])
            result.colouring[static_cast<std::size_t>(ids[static_cast<std::size_t>(v)])] = x;
    if (!finish.success()) {
        result.failed_iteration = static_cast<int>(result.trace.size());
        result.diagnostic = "greedy completion failed at " + std::to_string(finish.failed.size()) +
                            " vertices (min list " + std::to_string(cur_c.min_list_size()) + ", max degree " +
                            std::to_string(cur.max_degree()) + ")";
        return result;
    }
    if (!is_valid_colouring(g, c, result.colouring))
        throw std::logic_error("iterative_colour: produced an invalid colouring");
    result.success = true;
    return result;
}

GreedyCompletion greedy_complete(const Graph& g, const CorrespondenceAssignment& c, const PartialColouring& f)
{
    ResidualInstance r = residual_assignment(g, c, f);
    GreedyCompletion out;
    out.colouring = f;
    out.hypothesis_held = true;
    for (Vertex u = 0; u < r.graph.size(); ++u)
        if (static_cast<int>(r.assignment.colours(u).size()) <= r.graph.degree(u)) out.hypothesis_held = false;
    std::vector<Vertex> order(static_cast<std::size_t>(r.graph.size()));
    std::iota(order.begin(), order.end(), 0);
    const GreedyResult gr = greedy_correspondence(r.graph, r.assignment, order, {});
    for (Vertex v = 0; v < r.graph.size(); ++v)
        if (const auto& x = gr.colouring[static_cast<std::size_t>(v)])
            out.colouring[static_cast<std::size_t>(r.original_ids[static_cast<std::size_t>(v)])] = x;
    for (Vertex v : gr.failed) out.failed.push_back(r.original_ids[static_cast<std::size_t>(v)]);
    out.success = gr.success();
    return out;
}

}  // namespace sparsecol
