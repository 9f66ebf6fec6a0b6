#include "sparsecol/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "sparsecol/graph_ops.hpp"
#include "sparsecol/rng.hpp"

namespace sparsecol::harness {

std::uint64_t outcome_count(const Graph& g, const CorrespondenceAssignment& c)
{
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1;
    auto times = [&](std::uint64_t x) {
        if (x == 0) {
            total = 0;
        } else if (total != 0) {
            total = total > cap / x ? cap : total * x;
        }
    };
    for (Vertex u = 0; u < g.size(); ++u) times(c.colours(u).size());
    for (EdgeId e = 0; e < g.edge_count(); ++e) times(2);
    return total;
}

void for_each_outcome(const Graph& g, const CorrespondenceAssignment& c,
                      const std::function<void(const RoundOutcome&)>& visit)
{
    if (!c.matches(g)) throw std::invalid_argument("for_each_outcome: assignment does not match graph");
    const std::uint64_t total = outcome_count(g, c);
    if (total > max_enumerated_outcomes)
        throw std::length_error("for_each_outcome: " + std::to_string(total) + " outcomes exceed the limit of " +
                                std::to_string(max_enumerated_outcomes));
    if (total == 0) return;
    const auto n = static_cast<std::size_t>(g.size());
    const auto m = static_cast<std::size_t>(g.edge_count());
    std::vector<std::size_t> idx(n, 0);
    std::vector<Colour> f1(n);
    std::vector<Vertex> direction(m);
    while (true) {
        for (std::size_t u = 0; u < n; ++u) f1[u] = c.colours(static_cast<Vertex>(u))[idx[u]];
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
            for (std::size_t e = 0; e < m; ++e) {
                const Edge& edge = g.edge(static_cast<EdgeId>(e));
                direction[e] = (bits >> e) & 1 ? edge.second : edge.first;
            }
            visit(resolve_round(g, c, f1, direction));
        }
        std::size_t u = 0;
        while (u < n && ++idx[u] == c.colours(static_cast<Vertex>(u)).size()) idx[u++] = 0;
        if (u == n) break;
    }
}

RoundStats naive_round_stats(const Graph& g, const CorrespondenceAssignment& c, const RoundOutcome& o)
{
    const auto n = static_cast<std::size_t>(g.size());
    RoundStats s;
    s.col.assign(n, 0);
    s.dist.assign(n, 0);
    s.p.assign(n, 0);
    s.t.assign(n, 0);
    auto at_u = [&](Vertex u, Vertex v) { return c.map(g.edge_id(v, u), v, o.f1[static_cast<std::size_t>(v)]); };
    for (Vertex u = 0; u < g.size(); ++u) {
        const auto nb = g.neighbours(u);
        std::vector<Colour> blocked;
        for (Vertex v : nb) {
            if (!o.kept[static_cast<std::size_t>(v)]) continue;
            ++s.col[static_cast<std::size_t>(u)];
            if (auto x = at_u(u, v); x && std::find(blocked.begin(), blocked.end(), *x) == blocked.end())
                blocked.push_back(*x);
        }
        s.dist[static_cast<std::size_t>(u)] = static_cast<int>(blocked.size());
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                const Vertex v1 = nb[a];
                const Vertex v2 = nb[b];
                if (!o.kept[static_cast<std::size_t>(v1)] || !o.kept[static_cast<std::size_t>(v2)]) continue;
                if (g.adjacent(v1, v2)) continue;
                const auto c1 = at_u(u, v1);
                if (!c1 || c1 != at_u(u, v2)) continue;
                ++s.p[static_cast<std::size_t>(u)];
                for (std::size_t d = b + 1; d < nb.size(); ++d) {
                    const Vertex v3 = nb[d];
                    if (o.kept[static_cast<std::size_t>(v3)] && !g.adjacent(v1, v3) && !g.adjacent(v2, v3) &&
                        at_u(u, v3) == c1)
                        ++s.t[static_cast<std::size_t>(u)];
                }
            }
    }
    for (Vertex u = 0; u < g.size(); ++u) {
        if (o.kept[static_cast<std::size_t>(u)]) continue;
        int d = 0;
        for (Vertex v : g.neighbours(u)) d += o.kept[static_cast<std::size_t>(v)] ? 0 : 1;
        s.residual_max_degree = std::max(s.residual_max_degree, d);
        const int left = static_cast<int>(c.colours(u).size()) - s.dist[static_cast<std::size_t>(u)];
        s.residual_min_list = s.residual_min_list ? std::min(*s.residual_min_list, left) : left;
    }
    // All pairs u <= v with a common neighbour, in the same order as PairIndex.
    const PairIndex index(g);
    s.pairs = index.pairs();
    for (const auto& [u, v] : s.pairs) {
        int count = 0;
        int common = 0;
        for (Vertex w = 0; w < g.size(); ++w) {
            if (!g.adjacent(u, w) || !g.adjacent(v, w)) continue;
            ++common;
            count += o.kept[static_cast<std::size_t>(w)] ? 0 : 1;
        }
        s.pair_uncoloured.push_back(count);
        s.pair_common.push_back(common);
    }
    return s;
}

namespace {

bool same_stats(const RoundStats& a, const RoundStats& b)
{
    return a.col == b.col && a.dist == b.dist && a.p == b.p && a.t == b.t && a.pairs == b.pairs &&
           a.pair_uncoloured == b.pair_uncoloured && a.pair_common == b.pair_common &&
           a.residual_max_degree == b.residual_max_degree && a.residual_min_list == b.residual_min_list;
}

}  // namespace

EnumerationResult enumerate_outcomes(const Graph& g, const CorrespondenceAssignment& c)
{
    const auto n = static_cast<std::size_t>(g.size());
    const PairIndex index(g);
    std::vector<std::uint64_t> kept(n, 0);
    std::vector<std::int64_t> p(n, 0);
    std::vector<std::int64_t> t(n, 0);
    std::vector<std::int64_t> pair_sum(index.pairs().size(), 0);
    EnumerationResult r;
    for_each_outcome(g, c, [&](const RoundOutcome& o) {
        ++r.outcomes;
        const RoundStats s = round_stats(g, c, o, &index);
        if (r.stats_agree && !same_stats(s, naive_round_stats(g, c, o))) r.stats_agree = false;
        const bool valid = is_valid_colouring(g, c, o.f);
        if (!valid) r.always_valid = false;
        bool hypothesis = true;
        for (std::size_t u = 0; u < n; ++u) {
            kept[u] += o.kept[u] ? 1 : 0;
            p[u] += s.p[u];
            t[u] += s.t[u];
            if (s.col[u] - s.dist[u] < s.p[u] - s.t[u]) r.col_dist_dominates = false;
            const int k = static_cast<int>(c.colours(static_cast<Vertex>(u)).size());
            if (!o.kept[u] && s.col[u] - s.dist[u] < g.degree(static_cast<Vertex>(u)) + 1 - k) hypothesis = false;
        }
        for (std::size_t i = 0; i < pair_sum.size(); ++i) pair_sum[i] += s.pair_uncoloured[i];
        if (valid && hypothesis && !greedy_complete(g, c, o.f).success) r.greedy_completion_ok = false;
    });
    const Rational total = r.outcomes;
    for (std::size_t u = 0; u < n; ++u) {
        r.keep_probability.push_back(r.outcomes ? Rational(kept[u]) / total : Rational(0));
        r.expected_p.push_back(r.outcomes ? Rational(p[u]) / total : Rational(0));
        r.expected_t.push_back(r.outcomes ? Rational(t[u]) / total : Rational(0));
    }
    r.pairs = index.pairs();
    for (auto x : pair_sum) r.expected_pair_uncoloured.push_back(r.outcomes ? Rational(x) / total : Rational(0));
    return r;
}

namespace {

struct MonteCarloAccumulator {
    std::vector<std::int64_t> kept, p, p2, t, t2, pair, pair2;
    std::int64_t pooled = 0, pooled2 = 0;
    bool valid = true;

    MonteCarloAccumulator(std::size_t n, std::size_t pairs)
        : kept(n, 0), p(n, 0), p2(n, 0), t(n, 0), t2(n, 0), pair(pairs, 0), pair2(pairs, 0)
    {
    }

    void merge(const MonteCarloAccumulator& o)
    {
        auto add = [](std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        };
        add(kept, o.kept);
        add(p, o.p);
        add(p2, o.p2);
        add(t, o.t);
        add(t2, o.t2);
        add(pair, o.pair);
        add(pair2, o.pair2);
        pooled += o.pooled;
        pooled2 += o.pooled2;
        valid = valid && o.valid;
    }
};

// Mean and standard error from integer sum and sum of squares.
std::pair<double, double> mean_se(std::int64_t sum, std::int64_t sum2, std::uint64_t trials, double scale = 1.0)
{
    const auto nt = static_cast<double>(trials);
    const double mean = static_cast<double>(sum) / nt / scale;
    if (trials < 2) return {mean, 0.0};
    const double var = (static_cast<double>(sum2) - static_cast<double>(sum) * static_cast<double>(sum) / nt) /
                       (nt - 1) / (scale * scale);
    return {mean, std::sqrt(std::max(0.0, var) / nt)};
}

template <class Work>
void parallel_chunks(std::uint64_t count, unsigned threads, Work&& work)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
    if (threads == 1) {
        work(0u, std::uint64_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t begin = count * w / threads;
        const std::uint64_t end = count * (w + 1) / threads;
        pool.emplace_back([&work, w, begin, end] { work(w, begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

MonteCarloReport monte_carlo_round(const Graph& g, const CorrespondenceAssignment& c, const MonteCarloOptions& opts)
{
    if (opts.trials < 1) throw std::invalid_argument("monte_carlo_round: trials must be >= 1");
    if (!c.matches(g)) throw std::invalid_argument("monte_carlo_round: assignment does not match graph");
    const auto n = static_cast<std::size_t>(g.size());
    const PairIndex index(g);
    const std::size_t npairs = opts.collect_pairs ? index.pairs().size() : 0;
    const unsigned threads = std::max(1u, opts.threads);
    std::vector<MonteCarloAccumulator> acc(threads, MonteCarloAccumulator(n, npairs));

    parallel_chunks(opts.trials, threads, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        MonteCarloAccumulator& a = acc[w];
        for (std::uint64_t i = begin; i < end; ++i) {
            const RoundOutcome o = run_round(g, c, derive_seed(opts.seed, Stream::trial, i), 0, Totality::relaxed);
            const RoundStats s = round_stats(g, c, o, &index, opts.collect_pairs);
            std::int64_t kept_now = 0;
            for (std::size_t u = 0; u < n; ++u) {
                const std::int64_t k = o.kept[u] ? 1 : 0;
                kept_now += k;
                a.kept[u] += k;
                a.p[u] += s.p[u];
                a.p2[u] += s.p[u] * s.p[u];
                a.t[u] += s.t[u];
                a.t2[u] += s.t[u] * s.t[u];
            }
            a.pooled += kept_now;
            a.pooled2 += kept_now * kept_now;
            for (std::size_t j = 0; j < npairs; ++j) {
                const std::int64_t x = s.pair_uncoloured[j];
                a.pair[j] += x;
                a.pair2[j] += x * x;
            }
            if (!is_valid_colouring(g, c, o.f)) a.valid = false;
        }
    });
    for (unsigned w = 1; w < threads; ++w) acc[0].merge(acc[w]);
    const MonteCarloAccumulator& a = acc[0];

    MonteCarloReport r;
    r.trials = opts.trials;
    r.always_valid = a.valid;
    const int max_degree = g.max_degree();
    std::optional<SparsityReport> sparsity;
    if (max_degree >= 2) sparsity = local_sparsity(g);
    for (std::size_t u = 0; u < n; ++u) {
        const auto v = static_cast<Vertex>(u);
        const int k = static_cast<int>(c.colours(v).size());
        auto [km, ks] = mean_se(a.kept[u], a.kept[u], opts.trials);
        r.keep_mean.push_back(km);
        r.keep_se.push_back(ks);
        const double expected = keep_probability(k, g.degree(v));
        r.keep_expected.push_back(expected);
        r.keep_z.push_back(ks > 0 ? (km - expected) / ks : (km == expected ? 0.0 : std::numeric_limits<double>::infinity()));
        auto [pm, ps] = mean_se(a.p[u], a.p2[u], opts.trials);
        auto [tm, ts] = mean_se(a.t[u], a.t2[u], opts.trials);
        r.p_mean.push_back(pm);
        r.p_se.push_back(ps);
        r.t_mean.push_back(tm);
        r.t_se.push_back(ts);
        double formula = 0.0;
        if (sparsity) {
            const double d = max_degree;
            const double delta_u =
                1.0 - static_cast<double>(sparsity->neighbourhood_edges[u]) / (d * (d - 1) / 2);
            formula = delta_u * d * d / (2.0 * k) * std::exp(-d / k);
        }
        r.p_formula.push_back(formula);
        r.p_gap.push_back(formula > 0 ? 1.0 - pm / formula : 0.0);
    }
    if (opts.collect_pairs) {
        r.pairs = index.pairs();
        for (std::size_t j = 0; j < npairs; ++j) {
            auto [m, s] = mean_se(a.pair[j], a.pair2[j], opts.trials);
            r.pair_mean.push_back(m);
            r.pair_se.push_back(s);
        }
    }
    const auto [pm, ps] = mean_se(a.pooled, a.pooled2, opts.trials, n > 0 ? static_cast<double>(n) : 1.0);
    r.pooled_keep_mean = pm;
    r.pooled_keep_se = ps;
    return r;
}

SparsityExperimentReport residual_sparsity_experiment(const Graph& g, const CorrespondenceAssignment& c, int rounds,
                                                      std::uint64_t trials, std::uint64_t seed, unsigned threads)
{
    if (rounds < 0) throw std::invalid_argument("residual_sparsity_experiment: rounds must be >= 0");
    if (!c.matches(g)) throw std::invalid_argument("residual_sparsity_experiment: assignment does not match graph");
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SparsityExperimentReport report;
    report.initial_delta = g.max_degree() >= 2 ? local_sparsity(g).delta : nan;

    struct Sample {
        double delta = nan;
        double deviation = nan;
        double uncoloured = nan;
    };
    // samples[trial][round], reduced in trial order for thread-count invariance.
    std::vector<std::vector<Sample>> samples(trials, std::vector<Sample>(static_cast<std::size_t>(rounds)));
    parallel_chunks(trials, std::max(1u, threads), [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t tr = begin; tr < end; ++tr) {
            const std::uint64_t trial_seed = derive_seed(seed, Stream::trial, tr);
            Graph cur = g;
            CorrespondenceAssignment cc = c;
            for (int r = 0; r < rounds && cur.size() > 0 && cc.min_list_size() > 0; ++r) {
                const RoundOutcome o = run_round(cur, cc, derive_seed(trial_seed, Stream::iteration, r),
                                                 static_cast<std::uint64_t>(r), Totality::relaxed);
                std::vector<bool> uncoloured(o.kept.size());
                std::size_t left = 0;
                for (std::size_t u = 0; u < o.kept.size(); ++u) {
                    uncoloured[u] = !o.kept[u];
                    left += uncoloured[u] ? 1 : 0;
                }
                Sample& s = samples[tr][static_cast<std::size_t>(r)];
                const double mu = 1.0 - keep_probability(cc.min_list_size(), cur.max_degree());
                s.deviation = quasirandom_check(cur, uncoloured, mu, 0.0).worst_deviation;
                s.uncoloured = static_cast<double>(left) / g.size();
                ResidualInstance next = residual_assignment(cur, cc, o.f);
                if (next.graph.max_degree() >= 2) s.delta = local_sparsity(next.graph).delta;
                cur = std::move(next.graph);
                cc = std::move(next.assignment);
            }
        }
    });

    for (int r = 0; r < rounds; ++r) {
        SparsityRoundSummary sum;
        sum.round = r;
        sum.min_delta = sum.min_ratio = std::numeric_limits<double>::infinity();
        sum.max_delta = -std::numeric_limits<double>::infinity();
        int dev_count = 0;
        int ratio_count = 0;
        for (std::uint64_t tr = 0; tr < trials; ++tr) {
            const Sample& s = samples[tr][static_cast<std::size_t>(r)];
            if (!std::isnan(s.deviation)) {
                sum.mean_worst_deviation += s.deviation;
                sum.mean_uncoloured_fraction += s.uncoloured;
                ++dev_count;
            }
            if (std::isnan(s.delta)) continue;
            ++sum.samples;
            sum.mean_delta += s.delta;
            sum.min_delta = std::min(sum.min_delta, s.delta);
            sum.max_delta = std::max(sum.max_delta, s.delta);
            if (report.initial_delta > 0) {
                const double ratio = s.delta / report.initial_delta;
                sum.mean_ratio += ratio;
                sum.min_ratio = std::min(sum.min_ratio, ratio);
                ++ratio_count;
            }
        }
        if (dev_count > 0) {
            sum.mean_worst_deviation /= dev_count;
            sum.mean_uncoloured_fraction /= dev_count;
        }
        if (sum.samples > 0) {
            sum.mean_delta /= sum.samples;
        } else {
            sum.mean_delta = sum.min_delta = sum.max_delta = nan;
        }
        if (ratio_count > 0) {
            sum.mean_ratio /= ratio_count;
        } else {
            sum.mean_ratio = sum.min_ratio = nan;
        }
        report.rounds.push_back(sum);
    }
    return report;
}

namespace {

bool colourable(const Graph& g, const std::vector<Vertex>& order, std::size_t i, int k, int used,
                std::vector<int>& colour)
{
    if (i == order.size()) return true;
    const Vertex v = order[i];
    // Colours above `used` are interchangeable, so try only one of them.
    const int limit = std::min(k, used + 1);
    for (int x = 0; x < limit; ++x) {
        bool ok = true;
        for (Vertex w : g.neighbours(v))
            if (colour[static_cast<std::size_t>(w)] == x) {
                ok = false;
                break;
            }
        if (!ok) continue;
        colour[static_cast<std::size_t>(v)] = x;
        if (colourable(g, order, i + 1, k, std::max(used, x + 1), colour)) return true;
        colour[static_cast<std::size_t>(v)] = -1;
    }
    return false;
}

}  // namespace

int exact_chromatic(const Graph& g)
{
    if (g.size() > max_exact_vertices)
        throw std::length_error("exact_chromatic: limited to " + std::to_string(max_exact_vertices) + " vertices");
    if (g.size() == 0) return 0;
    std::vector<Vertex> order(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v) order[static_cast<std::size_t>(v)] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (int k = 1;; ++k) {
        std::vector<int> colour(static_cast<std::size_t>(g.size()), -1);
        if (colourable(g, order, 0, k, 0, colour)) return k;
    }
}

namespace {

bool extend(const Graph& g, const CorrespondenceAssignment& c, Vertex v, PartialColouring& f)
{
    if (v == g.size()) return true;
    for (Colour x : c.colours(v)) {
        bool ok = true;
        for (EdgeId e : g.incident_edges(v)) {
            const Vertex w = g.edge(e).other(v);
            if (w < v && c.map(e, v, x) == f[static_cast<std::size_t>(w)]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        f[static_cast<std::size_t>(v)] = x;
        if (extend(g, c, v + 1, f)) return true;
    }
    f[static_cast<std::size_t>(v)].reset();
    return false;
}

}  // namespace

std::optional<PartialColouring> exact_correspondence_colouring(const Graph& g, const CorrespondenceAssignment& c)
{
    if (g.size() > max_exact_vertices)
        throw std::length_error("exact_correspondence_colouring: limited to " + std::to_string(max_exact_vertices) +
                                " vertices");
    if (!c.matches(g)) throw std::invalid_argument("exact_correspondence_colouring: assignment does not match graph");
    PartialColouring f(static_cast<std::size_t>(g.size()));
    if (!extend(g, c, 0, f)) return std::nullopt;
    return f;
}

}  // namespace sparsecol::harness
