#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsecol/correspondence.hpp"
#include "sparsecol/graph.hpp"

namespace sparsecol {

// One run of the naive colouring procedure.
struct RoundOutcome {
    std::vector<Colour> f1;         // tentative colour per vertex
    std::vector<Vertex> direction;  // chosen end D(uv) per edge id
    std::vector<bool> kept;
    PartialColouring f;             // f1 on kept vertices
};

enum class Totality {
    required,  // reject assignments whose maps are not all bijections
    relaxed,   // any partial maps; used by experiments on residual assignments
};

// f1(u) uniform on C(u), D(uv) uniform on {u, v}; u loses its colour when
// some edge uv has C_uv(f1(u)) == f1(v) and D(uv) == u. Draws depend only on
// (seed, round_index, vertex or edge id).
RoundOutcome run_round(const Graph& g, const CorrespondenceAssignment& c, std::uint64_t seed,
                       std::uint64_t round_index = 0, Totality totality = Totality::required);

// Step 3 on explicit draws: f1 per vertex, chosen end per edge.
RoundOutcome resolve_round(const Graph& g, const CorrespondenceAssignment& c, std::vector<Colour> f1,
                           std::vector<Vertex> direction);

// (1 - 1/(2k))^degree. Throws std::invalid_argument for k < 1.
double keep_probability(int k, int degree);

// Vertex pairs {u, v} (u <= v) with a common neighbour, i.e. the pairs at
// distance at most 2 for which |N(u) ∩ N(v)| can be nonzero, plus u == v for
// every non-isolated u. For each w, lists the pairs inside N(w).
class PairIndex {
public:
    explicit PairIndex(const Graph& g);

    const std::vector<std::pair<Vertex, Vertex>>& pairs() const noexcept { return pairs_; }
    // |N(u) ∩ N(v)| per pair.
    const std::vector<int>& common() const noexcept { return common_; }
    // |N(u) ∩ N(v) ∩ A| per pair, A given by membership.
    std::vector<int> restricted_common(const std::vector<bool>& in_a) const;

private:
    std::vector<std::pair<Vertex, Vertex>> pairs_;
    std::vector<int> common_;
    std::vector<std::vector<std::int32_t>> through_;  // pair ids inside N(w)
};

struct RoundStats {
    std::vector<int> col;   // kept neighbours
    std::vector<int> dist;  // distinct colours of C(u) blocked by kept neighbours
    std::vector<std::int64_t> p;
    std::vector<std::int64_t> t;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<int> pair_uncoloured;  // N_{u,v}
    std::vector<int> pair_common;      // |N(u) ∩ N(v)|
    int residual_max_degree = 0;
    std::optional<int> residual_min_list;  // k'; empty when everything is coloured
};

// Throws std::invalid_argument when o does not belong to (g, c). The pair
// fields stay empty when with_pairs is false.
RoundStats round_stats(const Graph& g, const CorrespondenceAssignment& c, const RoundOutcome& o,
                       const PairIndex* index = nullptr, bool with_pairs = true);

struct QuasirandomReport {
    bool ok = true;
    std::pair<Vertex, Vertex> worst_pair{-1, -1};
    double worst_deviation = 0.0;  // largest | N_{u,v} - mu |N(u) ∩ N(v)| |
    int violations = 0;
};

double asymptotic_slack(int delta);                 // sqrt(Delta) (ln Delta)^5
double practical_slack(int delta, double c = 3.0);  // c sqrt(Delta ln Delta)

// Every pair at distance <= 2 (and u == v) satisfies
// | |N(u) ∩ N(v) ∩ uncoloured| - mu |N(u) ∩ N(v)| | <= slack.
QuasirandomReport quasirandom_check(const Graph& g, const std::vector<bool>& uncoloured, double mu, double slack,
                                    const PairIndex* index = nullptr);

enum class ThresholdProfile {
    asymptotic, // sqrt(D)(ln D)^5 slack, (1 - 1/ln D) factor on the P_u - T_u bound
    practical,  // c sqrt(D ln D) slack, factor tau on the P_u - T_u bound
    vacuous,    // no event can fire
};

struct RoundParams {
    double gamma = 0.0;  // target savings: k' >= k - (1 - mu - gamma) Delta
    double mu = 0.0;     // expected uncoloured fraction
    double slack = 0.0;  // allowed deviation for N_{u,v}
    // A_u fires when P_u - T_u < a_threshold.
    double a_threshold = 0.0;
};

// Expected P_u - T_u lower bound at sparsity delta, before the profile factor:
// (D delta/(2k) e^{-D/k} - D^2 delta^{3/2}/(6k^2) e^{-7D/(8k)}) D
double savings_bound(int k, int delta, double sparsity);

RoundParams make_round_params(ThresholdProfile profile, int k, int delta, double sparsity, double gamma = 0.0,
                              double tau = 0.5, double c = 3.0);

struct RoundAttempt {
    bool success = false;
    RoundOutcome outcome;  // best seen when !success
    RoundStats stats;
    int attempts = 0;
    int a_violations = 0;
    int b_violations = 0;
    Vertex worst_vertex = -1;  // largest shortfall below a_threshold
    QuasirandomReport quasirandom;
    bool savings_met = false;  // k' >= k - (1 - mu - gamma) Delta, reported only
    std::string diagnostic;
};

// Runs the procedure with derived seeds until no A_u or B_{u,v} event fires,
// at most max_restarts + 1 times.
RoundAttempt attempt_round(const Graph& g, const CorrespondenceAssignment& c, const RoundParams& params,
                           std::uint64_t seed, int max_restarts = 200, std::uint64_t round_index = 0);

struct ScheduleRow {
    int i = 0;
    double eps = 0, gamma = 0, delta = 0, k = 0, mu = 0, r = 0;
};

struct IterationSchedule {
    double eps = 0;
    double eps_prime = 0;  // (1 - eps') r0 = floor((1 - eps) r0)
    double delta = 0;
    double delta_prime = 0;
    double beta = 0;
    int T = 0;
    std::vector<ScheduleRow> rows;  // i = 0..T
};

class ScheduleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws ScheduleError when beta does not satisfy
// eps' e^{-1/(2(1-eps'))} + beta < g(eps', delta'), or when some row has
// gamma_i >= g(eps_i, delta_i).
IterationSchedule build_schedule(double eps, double delta, double beta, double delta_prime, double r0);

// delta' = 0.95 delta, beta = half the available gap.
IterationSchedule default_schedule(double eps, double delta, double r0);

struct IterationTrace {
    int iteration = 0;
    int vertices = 0;  // uncoloured at the start of the iteration
    int max_degree = 0;
    int k = 0;         // min list size
    int k_prime = 0;   // min residual list size
    double sparsity = 0;  // NaN when max degree <= 1
    int regularized_size = 0;
    int restarts = 0;
    bool round_success = false;
    int coloured = 0;
    int residual_max_degree = 0;
    double residual_sparsity = std::numeric_limits<double>::quiet_NaN();  // also NaN when max degree <= 1
};

struct IterativeOptions {
    int max_restarts = 200;
    ThresholdProfile profile = ThresholdProfile::asymptotic;
    double tau = 0.5;
    double c = 3.0;
    // Continue with the best outcome when the restart budget runs out.
    bool best_effort = false;
};

struct IterativeResult {
    bool success = false;
    PartialColouring colouring;
    int failed_iteration = -1;
    std::string diagnostic;
    std::vector<IterationTrace> trace;
};

IterativeResult iterative_colour(const Graph& g, const CorrespondenceAssignment& c, const IterationSchedule& schedule,
                                 std::uint64_t seed, const IterativeOptions& options = {});

struct GreedyCompletion {
    bool success = false;
    bool hypothesis_held = false;  // every residual list exceeds the residual degree
    PartialColouring colouring;
    std::vector<Vertex> failed;
};

GreedyCompletion greedy_complete(const Graph& g, const CorrespondenceAssignment& c, const PartialColouring& f);

}  // namespace sparsecol
