#include "sparsecol/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsecol/bounds.hpp"
#include "sparsecol/correspondence.hpp"
#include "sparsecol/generators.hpp"
#include "sparsecol/graph_ops.hpp"
#include "sparsecol/harness.hpp"
#include "sparsecol/io.hpp"
#include "sparsecol/ncp.hpp"
#include "sparsecol/strong_edge.hpp"

namespace sparsecol::cli {

namespace {

using nlohmann::json;

// Bad flags, bad input files and violated preconditions.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string rational_str(const bounds::Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string extension_format(const std::string& path)
{
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return {};
    const std::string ext = path.substr(dot + 1);
    if (ext == "json" || ext == "csv") return ext;
    if (ext == "dimacs" || ext == "col") return "dimacs";
    return {};
}

// --format wins, then the --out extension, then the subcommand default.
std::string resolve_format(const RunConfig& cfg, const std::string& fallback,
                           std::initializer_list<const char*> allowed)
{
    std::string f = cfg.format.empty() ? extension_format(cfg.out) : cfg.format;
    if (f.empty()) f = fallback;
    for (const char* a : allowed)
        if (f == a) return f;
    throw UsageError("format '" + f + "' is not available for " + cfg.subcommand);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw UsageError("cannot write " + cfg.out);
    file << text;
}

json config_json(const RunConfig& cfg)
{
    json j;
    j["subcommand"] = cfg.subcommand;
    if (!cfg.mode.empty()) j["mode"] = cfg.mode;
    if (!cfg.input.empty()) j["input"] = cfg.input;
    if (!cfg.assignment.empty()) j["assignment"] = cfg.assignment;
    json gen = json::object();
    if (cfg.empty >= 0) gen["empty"] = cfg.empty;
    if (cfg.complete >= 0) gen["complete"] = cfg.complete;
    if (cfg.cycle >= 0) gen["cycle"] = cfg.cycle;
    if (cfg.path >= 0) gen["path"] = cfg.path;
    if (cfg.star >= 0) gen["star"] = cfg.star;
    if (cfg.c5_blowup >= 0) gen["c5_blowup"] = cfg.c5_blowup;
    if (cfg.petersen) gen["petersen"] = true;
    if (cfg.projective_plane >= 0) gen["projective_plane"] = cfg.projective_plane;
    if (!cfg.random_regular.empty()) gen["random_regular"] = cfg.random_regular;
    if (!cfg.gnp.empty()) gen["gnp"] = cfg.gnp;
    if (!gen.empty()) j["generator"] = gen;
    j["k"] = cfg.k >= 0 ? json(cfg.k) : json(nullptr);
    j["eta"] = cfg.eta;
    j["eps"] = real(cfg.eps);
    j["delta"] = real(cfg.delta);
    j["delta_prime"] = real(cfg.delta_prime);
    j["beta"] = real(cfg.beta);
    j["tau"] = cfg.tau;
    j["slack_c"] = cfg.slack_c;
    j["variant"] = cfg.variant;
    j["trials"] = cfg.trials;
    j["rounds"] = cfg.rounds;
    j["max_restarts"] = cfg.max_restarts;
    j["best_effort"] = cfg.best_effort;
    j["pairs"] = cfg.pairs;
    j["profile"] = cfg.profile;
    j["seed"] = cfg.seed;
    return j;
}

json report(const RunConfig& cfg, json result)
{
    json j;
    j["version"] = SPARSECOL_VERSION;
    j["config"] = config_json(cfg);
    j["result"] = std::move(result);
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int generator_count(const RunConfig& c)
{
    return (c.empty >= 0) + (c.complete >= 0) + (c.cycle >= 0) + (c.path >= 0) + (c.star >= 0) +
           (c.c5_blowup >= 0) + c.petersen + (c.projective_plane >= 0) + !c.random_regular.empty() + !c.gnp.empty();
}

Graph make_graph(const RunConfig& cfg, bool allow_file = true)
{
    const int sources = generator_count(cfg) + (allow_file && !cfg.input.empty());
    if (sources != 1)
        throw UsageError(allow_file ? "give exactly one of --input or a generator flag"
                                    : "give exactly one generator flag");
    if (!cfg.input.empty()) return io::load_graph(cfg.input);
    if (cfg.empty >= 0) return gen::empty(cfg.empty);
    if (cfg.complete >= 0) return gen::complete(cfg.complete);
    if (cfg.cycle >= 0) return gen::cycle(cfg.cycle);
    if (cfg.path >= 0) return gen::path(cfg.path);
    if (cfg.star >= 0) return gen::star(cfg.star);
    if (cfg.c5_blowup >= 0) return c5_blowup(cfg.c5_blowup);
    if (cfg.petersen) return gen::petersen();
    if (cfg.projective_plane >= 0) return gen::projective_plane(cfg.projective_plane);
    if (!cfg.random_regular.empty()) return gen::random_regular(cfg.random_regular[0], cfg.random_regular[1], cfg.seed);
    return gen::random_gnp(static_cast<Vertex>(cfg.gnp[0]), cfg.gnp[1], cfg.seed);
}

CorrespondenceAssignment make_assignment(const RunConfig& cfg, const Graph& g)
{
    if (cfg.assignment.empty() == (cfg.k < 0)) throw UsageError("give exactly one of --k or --assignment");
    if (cfg.k >= 0) {
        if (cfg.k < 1) throw UsageError("--k must be at least 1");
        return CorrespondenceAssignment::identity(g, cfg.k);
    }
    std::ifstream in(cfg.assignment);
    if (!in) throw UsageError("cannot open " + cfg.assignment);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw UsageError(std::string("assignment JSON: ") + ex.what());
    }
    return assignment_from_json(g, j);
}

ThresholdProfile parse_profile(const std::string& p)
{
    if (p == "asymptotic") return ThresholdProfile::asymptotic;
    if (p == "practical") return ThresholdProfile::practical;
    if (p == "vacuous") return ThresholdProfile::vacuous;
    throw UsageError("unknown profile " + p);
}

json colouring_json(const PartialColouring& f)
{
    json a = json::array();
    for (const auto& x : f) a.push_back(x ? json(*x) : json(nullptr));
    return a;
}

// ---------------------------------------------------------------- gen

int run_gen(const RunConfig& cfg, std::ostream& out)
{
    const Graph g = make_graph(cfg, false);
    const std::string fmt = resolve_format(cfg, "dimacs", {"dimacs", "json"});
    std::ostringstream os;
    if (fmt == "json") {
        os << io::graph_to_json(g).dump() << '\n';
    } else {
        io::write_dimacs(os, g, std::string("sparsecol ") + SPARSECOL_VERSION + " seed " + std::to_string(cfg.seed));
    }
    emit(cfg, os.str(), out);
    return exit_ok;
}

// ---------------------------------------------------------------- color

int run_color(const RunConfig& cfg, std::ostream& out)
{
    const Graph g = make_graph(cfg);
    const CorrespondenceAssignment c = make_assignment(cfg, g);
    const std::string fmt = resolve_format(cfg, "json", {"json", "csv"});
    IterativeOptions opts;
    opts.max_restarts = cfg.max_restarts;
    opts.profile = parse_profile(cfg.profile);
    opts.tau = cfg.tau;
    opts.c = cfg.slack_c;
    opts.best_effort = cfg.best_effort;

    const int max_degree = g.max_degree();
    const int k = g.size() > 0 ? c.min_list_size() : 0;
    json sched;
    IterationSchedule schedule;  // T = 0: greedy only
    if (max_degree >= 2 && k >= 1 && k < max_degree) {
        const double eps = std::isnan(cfg.eps) ? 1.0 - static_cast<double>(k) / max_degree : cfg.eps;
        const double delta = std::isnan(cfg.delta) ? local_sparsity(g).delta : cfg.delta;
        sched["eps"] = eps;
        sched["delta"] = delta;
        try {
            if (std::isnan(cfg.beta)) {
                schedule = default_schedule(eps, delta, max_degree);
            } else {
                const double dp = std::isnan(cfg.delta_prime) ? 0.95 * delta : cfg.delta_prime;
                schedule = build_schedule(eps, delta, cfg.beta, dp, max_degree);
            }
            sched["eps_prime"] = schedule.eps_prime;
            sched["delta_prime"] = schedule.delta_prime;
            sched["beta"] = schedule.beta;
            sched["T"] = schedule.T;
            json rows = json::array();
            for (const ScheduleRow& r : schedule.rows)
                rows.push_back({{"i", r.i}, {"eps", r.eps}, {"gamma", r.gamma}, {"delta", r.delta}, {"k", r.k},
                                {"mu", r.mu}, {"r", r.r}});
            sched["rows"] = rows;
        } catch (const ScheduleError& ex) {
            schedule = IterationSchedule{};
            sched["error"] = ex.what();
        }
    } else {
        sched["note"] = "no iterative rounds: need 1 <= k < max degree and max degree >= 2";
    }
    sched["mode"] = schedule.T > 0 ? "iterative" : "greedy-only";

    const IterativeResult r = iterative_colour(g, c, schedule, cfg.seed, opts);
    if (fmt == "csv") {
        std::ostringstream os;
        os << "vertex,colour\n";
        for (Vertex v = 0; v < g.size(); ++v) {
            const auto& x = r.colouring[static_cast<std::size_t>(v)];
            os << v << ',' << (x ? std::to_string(*x) : std::string()) << '\n';
        }
        emit(cfg, os.str(), out);
    } else {
        json rounds = json::array();
        for (const IterationTrace& t : r.trace)
            rounds.push_back({{"iteration", t.iteration},
                              {"vertices", t.vertices},
                              {"maxDegree", t.max_degree},
                              {"k", t.k},
                              {"kPrime", t.k_prime},
                              {"sparsity", real(t.sparsity)},
                              {"regularizedSize", t.regularized_size},
                              {"restarts", t.restarts},
                              {"roundSuccess", t.round_success},
                              {"coloured", t.coloured},
                              {"residualDelta", t.residual_max_degree},
                              {"residualSparsity", real(t.residual_sparsity)}});
        json res;
        res["n"] = g.size();
        res["edges"] = g.edge_count();
        res["maxDegree"] = max_degree;
        res["k"] = k;
        res["schedule"] = sched;
        res["success"] = r.success;
        res["failedIteration"] = r.failed_iteration;
        res["diagnostic"] = r.diagnostic;
        res["rounds"] = rounds;
        res["colouring"] = colouring_json(r.colouring);
        emit(cfg, dump(report(cfg, res)), out);
    }
    return r.success ? exit_ok : exit_failure;
}

// ---------------------------------------------------------------- strong-edge

int run_strong_edge(const RunConfig& cfg, std::ostream& out)
{
    const Graph h = make_graph(cfg);
    const std::string fmt = resolve_format(cfg, "json", {"json", "csv"});
    const StrongColouring s = strong_edge_colour(h, cfg.eta, cfg.seed);
    if (fmt == "csv") {
        std::ostringstream os;
        os << "edge,u,v,colour\n";
        for (EdgeId e = 0; e < h.edge_count(); ++e)
            os << e << ',' << h.edge(e).first << ',' << h.edge(e).second << ','
               << s.colours[static_cast<std::size_t>(e)] << '\n';
        emit(cfg, os.str(), out);
        return exit_ok;
    }
    json colours = json::object();
    json edges = json::array();
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        colours[std::to_string(e)] = s.colours[static_cast<std::size_t>(e)];
        edges.push_back({h.edge(e).first, h.edge(e).second});
    }
    json res;
    res["maxDegree"] = h.max_degree();
    res["numColours"] = s.num_colours;
    res["ratioToDeltaSq"] = s.ratio_to_delta_sq;
    res["fCoreSize"] = s.f_core_size;
    res["usedIterative"] = s.used_iterative;
    res["fallback"] = s.fallback;
    res["warning"] = s.warning;
    res["valid"] = is_strong_edge_colouring(h, s.colours);
    if (h.is_regular() && cfg.eta >= 0 && cfg.eta <= 0.3) {
        const FCoreDensityReport d = f_core_density_check(h, cfg.eta);
        res["fCoreDensity"] = {{"bound", d.bound},
                               {"maxCount", d.max_count},
                               {"maxRatio", d.max_ratio},
                               {"holds", d.holds},
                               {"worstEdge", d.worst_edge}};
    }
    res["edges"] = edges;
    res["colours"] = colours;
    emit(cfg, dump(report(cfg, res)), out);
    return exit_ok;
}

// ---------------------------------------------------------------- bounds

json condition_json(const bounds::ConditionReport& r)
{
    return {{"holds", r.holds}, {"margin", r.margin}, {"marginDigits", r.margin_digits}, {"rhs", r.rhs}};
}

int run_bounds(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.mode == "table1") {
        const auto rows = bounds::table1();
        if (resolve_format(cfg, "csv", {"csv", "json"}) == "csv") {
            std::ostringstream os;
            os << "alpha,eps\n";
            for (const auto& r : rows) os << bounds::format_fixed(r.alpha, 2) << ',' << bounds::format_fixed(r.eps) << '\n';
            emit(cfg, os.str(), out);
        } else {
            json a = json::array();
            for (const auto& r : rows)
                a.push_back({{"alpha", bounds::format_fixed(r.alpha, 2)}, {"eps", bounds::format_fixed(r.eps)}});
            emit(cfg, dump(report(cfg, a)), out);
        }
        return exit_ok;
    }
    resolve_format(cfg, "json", {"json"});
    json res;
    if (cfg.mode == "constants") {
        const auto s = bounds::strong_edge_constants();
        const double root_e = std::sqrt(std::exp(1.0));
        res["sqrtE"] = root_e;
        res["ours"] = {{"linear", 0.3012}, {"power", 0.1283}};
        res["bruhnJoos"] = {{"linear", 0.1827}, {"power", 0.0778}};
        res["sqrtETimesBruhnJoos"] = {{"linear", root_e * 0.1827}, {"power", root_e * 0.0778}};
        res["approxEpsBruhnJoos_0.24"] = bounds::approx_eps(0.24, bounds::EpsVariant::bruhn_joos);
        res["strongEdge"] = {{"eta", s.eta},
                             {"f2", s.f2},
                             {"deltaFromF2", s.delta_from_f2},
                             {"eps", s.eps},
                             {"delta", s.delta},
                             {"condition", condition_json(s.condition)},
                             {"coefficient", rational_str(s.coefficient)},
                             {"coefficientDecimal", s.coefficient.convert_to<double>()}};
    } else if (cfg.mode == "condition") {
        if (std::isnan(cfg.eps) || std::isnan(cfg.delta)) throw UsageError("condition needs --eps and --delta");
        res = condition_json(bounds::condition_check(cfg.eps, cfg.delta));
        res["g"] = bounds::g_func(cfg.eps, cfg.delta);
    } else if (cfg.mode == "approx-eps") {
        if (std::isnan(cfg.delta)) throw UsageError("approx-eps needs --delta");
        bounds::EpsVariant v;
        if (cfg.variant == "ours") {
            v = bounds::EpsVariant::ours;
        } else if (cfg.variant == "bruhn-joos") {
            v = bounds::EpsVariant::bruhn_joos;
        } else {
            throw UsageError("unknown variant " + cfg.variant);
        }
        res["eps"] = bounds::approx_eps(cfg.delta, v);
    } else if (cfg.mode == "strong") {
        const double beta = std::isnan(cfg.beta) ? cfg.eta : cfg.beta;
        res["f2"] = bounds::strong_f2(beta, cfg.eta);
        res["f1Argmax"] = bounds::strong_f1_argmax(beta);
        res["fCoreEdgeBoundCoefficient"] = f_core_edge_bound(cfg.eta, 1);
    } else {
        throw UsageError("unknown bounds mode '" + cfg.mode + "' (table1, constants, condition, approx-eps, strong)");
    }
    emit(cfg, dump(report(cfg, res)), out);
    return exit_ok;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const RunConfig& cfg, std::ostream& out)
{
    const Graph g = make_graph(cfg);
    const CorrespondenceAssignment c = make_assignment(cfg, g);
    const std::string fmt = resolve_format(cfg, "json", {"json", "csv"});
    std::ostringstream csv;
    json res;

    if (cfg.mode == "round") {
        const RoundOutcome o = run_round(g, c, cfg.seed, 0, Totality::relaxed);
        const RoundStats s = round_stats(g, c, o);
        csv << "vertex,kept,f1,col,dist,p,t\n";
        json vs = json::array();
        for (Vertex v = 0; v < g.size(); ++v) {
            const auto i = static_cast<std::size_t>(v);
            csv << v << ',' << int(o.kept[i]) << ',' << o.f1[i] << ',' << s.col[i] << ',' << s.dist[i] << ','
                << s.p[i] << ',' << s.t[i] << '\n';
            vs.push_back({{"vertex", v},
                          {"kept", bool(o.kept[i])},
                          {"f1", o.f1[i]},
                          {"Col", s.col[i]},
                          {"Dist", s.dist[i]},
                          {"Pu", s.p[i]},
                          {"Tu", s.t[i]}});
        }
        res["vertices"] = vs;
        res["valid"] = is_valid_colouring(g, c, o.f);
        res["residualDelta"] = s.residual_max_degree;
        res["kPrime"] = s.residual_min_list ? json(*s.residual_min_list) : json(nullptr);
    } else if (cfg.mode == "montecarlo") {
        harness::MonteCarloOptions mo;
        mo.trials = cfg.trials;
        mo.seed = cfg.seed;
        mo.threads = cfg.threads;
        mo.collect_pairs = cfg.pairs;
        const harness::MonteCarloReport r = harness::monte_carlo_round(g, c, mo);
        csv << "vertex,keep_mean,keep_se,keep_expected,keep_z,p_mean,p_se,t_mean,t_se,p_formula,p_gap\n";
        json vs = json::array();
        for (std::size_t i = 0; i < r.keep_mean.size(); ++i) {
            csv << i << ',' << num(r.keep_mean[i]) << ',' << num(r.keep_se[i]) << ',' << num(r.keep_expected[i]) << ','
                << num(r.keep_z[i]) << ',' << num(r.p_mean[i]) << ',' << num(r.p_se[i]) << ',' << num(r.t_mean[i])
                << ',' << num(r.t_se[i]) << ',' << num(r.p_formula[i]) << ',' << num(r.p_gap[i]) << '\n';
            vs.push_back({{"vertex", i},
                          {"keepMean", r.keep_mean[i]},
                          {"keepSe", r.keep_se[i]},
                          {"keepExpected", r.keep_expected[i]},
                          {"keepZ", real(r.keep_z[i])},
                          {"pMean", r.p_mean[i]},
                          {"pSe", r.p_se[i]},
                          {"tMean", r.t_mean[i]},
                          {"tSe", r.t_se[i]},
                          {"pFormula", r.p_formula[i]},
                          {"pGap", r.p_gap[i]}});
        }
        res["trials"] = r.trials;
        res["pooledKeepMean"] = r.pooled_keep_mean;
        res["pooledKeepSe"] = r.pooled_keep_se;
        res["alwaysValid"] = r.always_valid;
        res["vertices"] = vs;
        if (cfg.pairs) {
            json ps = json::array();
            for (std::size_t i = 0; i < r.pairs.size(); ++i)
                ps.push_back({{"u", r.pairs[i].first},
                              {"v", r.pairs[i].second},
                              {"mean", r.pair_mean[i]},
                              {"se", r.pair_se[i]}});
            res["pairs"] = ps;
        }
    } else if (cfg.mode == "sparsity") {
        const harness::SparsityExperimentReport r =
            harness::residual_sparsity_experiment(g, c, cfg.rounds, cfg.trials, cfg.seed, cfg.threads);
        csv << "round,samples,mean_delta,min_delta,max_delta,mean_ratio,min_ratio,mean_worst_deviation,"
               "mean_uncoloured_fraction\n";
        json rs = json::array();
        for (const auto& s : r.rounds) {
            csv << s.round << ',' << s.samples << ',' << num(s.mean_delta) << ',' << num(s.min_delta) << ','
                << num(s.max_delta) << ',' << num(s.mean_ratio) << ',' << num(s.min_ratio) << ','
                << num(s.mean_worst_deviation) << ',' << num(s.mean_uncoloured_fraction) << '\n';
            rs.push_back({{"round", s.round},
                          {"samples", s.samples},
                          {"meanDelta", real(s.mean_delta)},
                          {"minDelta", real(s.min_delta)},
                          {"maxDelta", real(s.max_delta)},
                          {"meanRatio", real(s.mean_ratio)},
                          {"minRatio", real(s.min_ratio)},
                          {"meanWorstDeviation", real(s.mean_worst_deviation)},
                          {"meanUncolouredFraction", real(s.mean_uncoloured_fraction)}});
        }
        res["initialDelta"] = real(r.initial_delta);
        res["rounds"] = rs;
    } else {
        throw UsageError("unknown simulate mode '" + cfg.mode + "' (round, montecarlo, sparsity)");
    }
    emit(cfg, fmt == "csv" ? csv.str() : dump(report(cfg, res)), out);
    return exit_ok;
}

// ---------------------------------------------------------------- oracle

json cliques_json(const CliqueInfo& ci)
{
    return {{"omega", ci.omega}, {"maximumCliques", ci.maximum_cliques}};
}

int run_oracle(const RunConfig& cfg, std::ostream& out)
{
    const Graph g = make_graph(cfg);
    resolve_format(cfg, "json", {"json"});
    json res;
    int code = exit_ok;
    if (cfg.mode == "enumerate") {
        const CorrespondenceAssignment c = make_assignment(cfg, g);
        const harness::EnumerationResult r = harness::enumerate_outcomes(g, c);
        json vs = json::array();
        for (std::size_t i = 0; i < r.keep_probability.size(); ++i) {
            const auto v = static_cast<Vertex>(i);
            vs.push_back({{"vertex", v},
                          {"keepProbability", rational_str(r.keep_probability[i])},
                          {"closedForm", keep_probability(static_cast<int>(c.colours(v).size()), g.degree(v))},
                          {"expectedP", rational_str(r.expected_p[i])},
                          {"expectedT", rational_str(r.expected_t[i])}});
        }
        json ps = json::array();
        for (std::size_t i = 0; i < r.pairs.size(); ++i)
            ps.push_back({{"u", r.pairs[i].first},
                          {"v", r.pairs[i].second},
                          {"expectedUncoloured", rational_str(r.expected_pair_uncoloured[i])}});
        res["outcomes"] = r.outcomes;
        res["statsAgree"] = r.stats_agree;
        res["colDistDominates"] = r.col_dist_dominates;
        res["greedyCompletionOk"] = r.greedy_completion_ok;
        res["alwaysValid"] = r.always_valid;
        res["vertices"] = vs;
        res["pairs"] = ps;
        if (!(r.stats_agree && r.col_dist_dominates && r.greedy_completion_ok && r.always_valid)) code = exit_failure;
    } else if (cfg.mode == "chromatic") {
        res["chromaticNumber"] = harness::exact_chromatic(g);
    } else if (cfg.mode == "correspondence") {
        const CorrespondenceAssignment c = make_assignment(cfg, g);
        const auto f = harness::exact_correspondence_colouring(g, c);
        res["colourable"] = f.has_value();
        res["colouring"] = f ? colouring_json(*f) : json(nullptr);
    } else if (cfg.mode == "cliques") {
        res = cliques_json(clique_info(g));
    } else if (cfg.mode == "reduce") {
        const CliqueReduction r = reduce_by_cliques(g);
        json rounds = json::array();
        for (const ReductionRound& rr : r.rounds)
            rounds.push_back({{"omegaBefore", rr.omega_before},
                              {"omegaAfter", rr.omega_after},
                              {"maxDegreeBefore", rr.max_degree_before},
                              {"maxDegreeAfter", rr.max_degree_after},
                              {"removed", rr.removed}});
        res["peeled"] = r.peeled;
        res["rounds"] = rounds;
        res["remaining"] = r.original_ids;
        res["final"] = cliques_json(clique_info(r.graph));
        res["finalMaxDegree"] = r.graph.max_degree();
        if (g.size() <= harness::max_exact_vertices) {
            const int chi = harness::exact_chromatic(g);
            const int chi_reduced = harness::exact_chromatic(r.graph);
            res["chromatic"] = {{"original", chi}, {"reduced", chi_reduced}, {"holds", chi <= chi_reduced + r.peeled}};
        }
    } else {
        throw UsageError("unknown oracle mode '" + cfg.mode + "' (enumerate, chromatic, correspondence, cliques, reduce)");
    }
    emit(cfg, dump(report(cfg, res)), out);
    return code;
}

// ---------------------------------------------------------------- parsing

void add_graph_options(CLI::App* app, RunConfig& cfg, bool with_input)
{
    if (with_input) app->add_option("-i,--input", cfg.input, "graph file (.json or DIMACS)");
    app->add_option("--empty", cfg.empty, "edgeless graph on N vertices");
    app->add_option("--complete", cfg.complete, "complete graph K_N");
    app->add_option("--cycle", cfg.cycle, "cycle C_N");
    app->add_option("--path", cfg.path, "path on N vertices");
    app->add_option("--star", cfg.star, "star with N leaves");
    app->add_option("--c5-blowup", cfg.c5_blowup, "C5 blow-up with groups of size K");
    app->add_flag("--petersen", cfg.petersen, "Petersen graph");
    app->add_option("--projective-plane", cfg.projective_plane, "incidence graph of the plane over Z_Q, Q prime");
    app->add_option("--random-regular", cfg.random_regular, "random regular graph: N,D")
        ->expected(2)
        ->delimiter(',');
    app->add_option("--gnp", cfg.gnp, "G(n, p): N,P")->expected(2)->delimiter(',');
}

void add_common(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--seed", cfg.seed, "master seed");
    app->add_option("-o,--out", cfg.out, "output path (default stdout)");
    app->add_option("--format", cfg.format, "json, csv or dimacs")->check(CLI::IsMember({"json", "csv", "dimacs"}));
}

void add_assignment(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--k", cfg.k, "identity assignment with colours 0..k-1");
    app->add_option("--assignment", cfg.assignment, "assignment JSON file");
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"sparsecol: correspondence colouring of locally sparse graphs", "sparsecol"};
    app.set_version_flag("--version", SPARSECOL_VERSION);
    app.set_config("--config", "", "TOML/INI file; flags override it");
    app.require_subcommand(1);

    CLI::App* gen = app.add_subcommand("gen", "generate a graph");
    add_graph_options(gen, cfg, false);
    add_common(gen, cfg);

    CLI::App* color = app.add_subcommand("color", "iterative correspondence colouring");
    add_graph_options(color, cfg, true);
    add_common(color, cfg);
    add_assignment(color, cfg);
    color->add_option("--eps", cfg.eps, "schedule eps (default 1 - k/Delta)");
    color->add_option("--delta", cfg.delta, "sparsity (default measured)");
    color->add_option("--delta-prime", cfg.delta_prime, "target sparsity (default 0.95 delta)");
    color->add_option("--beta", cfg.beta, "schedule step (default half the available gap)");
    color->add_option("--max-restarts", cfg.max_restarts, "restarts per round")->check(CLI::NonNegativeNumber);
    color->add_option("--profile", cfg.profile, "bad-event thresholds")
        ->check(CLI::IsMember({"asymptotic", "practical", "vacuous"}));
    color->add_option("--tau", cfg.tau, "A_u factor for the practical profile");
    color->add_option("--slack-c", cfg.slack_c, "slack constant for the practical profile");
    color->add_flag("--best-effort", cfg.best_effort, "continue past a failed round");

    CLI::App* strong = app.add_subcommand("strong-edge", "strong edge colouring");
    add_graph_options(strong, cfg, true);
    add_common(strong, cfg);
    strong->add_option("--eta", cfg.eta, "F-core parameter");

    CLI::App* bnd = app.add_subcommand("bounds", "closed-form bounds and tables");
    bnd->add_option("mode", cfg.mode, "table1, constants, condition, approx-eps, strong")->required();
    add_common(bnd, cfg);
    bnd->add_option("--eps", cfg.eps);
    bnd->add_option("--delta", cfg.delta);
    bnd->add_option("--beta", cfg.beta);
    bnd->add_option("--eta", cfg.eta);
    bnd->add_option("--variant", cfg.variant, "ours or bruhn-joos");

    CLI::App* sim = app.add_subcommand("simulate", "one round, Monte Carlo, residual sparsity");
    sim->add_option("mode", cfg.mode, "round, montecarlo, sparsity")->required();
    add_graph_options(sim, cfg, true);
    add_common(sim, cfg);
    add_assignment(sim, cfg);
    sim->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    sim->add_option("--rounds", cfg.rounds)->check(CLI::NonNegativeNumber);
    sim->add_option("--threads", cfg.threads, "worker threads; does not change results")->check(CLI::PositiveNumber);
    sim->add_flag("--pairs", cfg.pairs, "report N_{u,v} means");

    CLI::App* orc = app.add_subcommand("oracle", "exact small-instance oracles");
    orc->add_option("mode", cfg.mode, "enumerate, chromatic, correspondence, cliques, reduce")->required();
    add_graph_options(orc, cfg, true);
    add_common(orc, cfg);
    add_assignment(orc, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*gen) {
            cfg.subcommand = "gen";
            return run_gen(cfg, out);
        }
        if (*color) {
            cfg.subcommand = "color";
            return run_color(cfg, out);
        }
        if (*strong) {
            cfg.subcommand = "strong-edge";
            return run_strong_edge(cfg, out);
        }
        if (*bnd) {
            cfg.subcommand = "bounds";
            return run_bounds(cfg, out);
        }
        if (*sim) {
            cfg.subcommand = "simulate";
            return run_simulate(cfg, out);
        }
        cfg.subcommand = "oracle";
        return run_oracle(cfg, out);
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const io::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const GraphError& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const std::length_error& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const std::exception& ex) {
        err << "failed: " << ex.what() << '\n';
        return exit_failure;
    }
}

int dispatch(int argc, const char* const* argv) { return dispatch(argc, argv, std::cout, std::cerr); }

}  // namespace sparsecol::cli
