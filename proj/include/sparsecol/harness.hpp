#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sparsecol/bounds.hpp"
#include "sparsecol/correspondence.hpp"
#include "sparsecol/graph.hpp"
#include "sparsecol/ncp.hpp"

namespace sparsecol::harness {

using bounds::Rational;

inline constexpr std::uint64_t max_enumerated_outcomes = 10'000'000;

// prod |C(u)| * 2^|E|, saturating at UINT64_MAX.
std::uint64_t outcome_count(const Graph& g, const CorrespondenceAssignment& c);

// Calls visit once for every (f1, D) pair. Throws std::length_error past
// max_enumerated_outcomes.
void for_each_outcome(const Graph& g, const CorrespondenceAssignment& c,
                      const std::function<void(const RoundOutcome&)>& visit);

struct EnumerationResult {
    std::uint64_t outcomes = 0;
    std::vector<Rational> keep_probability;  // per vertex
    std::vector<Rational> expected_p;
    std::vector<Rational> expected_t;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<Rational> expected_pair_uncoloured;  // E[N_{u,v}]
    // Checked on every outcome:
    bool stats_agree = true;          // round_stats equals the naive recount
    bool col_dist_dominates = true;   // Col(u) - Dist(u) >= P_u - T_u
    bool greedy_completion_ok = true; // Col - Dist >= d + 1 - k on uncoloured u => greedy_complete succeeds
    bool always_valid = true;         // f is a valid partial colouring
};

EnumerationResult enumerate_outcomes(const Graph& g, const CorrespondenceAssignment& c);

// Pairwise-loop recomputation of round_stats, without grouping or indexing.
RoundStats naive_round_stats(const Graph& g, const CorrespondenceAssignment& c, const RoundOutcome& o);

struct MonteCarloOptions {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool collect_pairs = false;
};

struct MonteCarloReport {
    std::uint64_t trials = 0;
    std::vector<double> keep_mean, keep_se, keep_expected, keep_z;
    std::vector<double> p_mean, p_se, t_mean, t_se;
    // delta_u Delta^2 / (2k) e^{-Delta/k} and 1 - p_mean / that value.
    std::vector<double> p_formula, p_gap;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<double> pair_mean, pair_se;
    // Fraction of kept vertices per trial, averaged.
    double pooled_keep_mean = 0, pooled_keep_se = 0;
    bool always_valid = true;
};

// Trial i uses derive_seed(seed, Stream::trial, i). Accumulators are integers,
// so the report does not depend on the thread count.
MonteCarloReport monte_carlo_round(const Graph& g, const CorrespondenceAssignment& c, const MonteCarloOptions& opts);

struct SparsityRoundSummary {
    int round = 0;
    int samples = 0;        // trials where the residual had max degree >= 2
    double mean_delta = 0, min_delta = 0, max_delta = 0;
    double mean_ratio = 0, min_ratio = 0;  // delta' / delta, NaN when delta == 0
    double mean_worst_deviation = 0;
    double mean_uncoloured_fraction = 0;
};

struct SparsityExperimentReport {
    double initial_delta = 0;
    std::vector<SparsityRoundSummary> rounds;
};

// Repeats the procedure on the residual instance for `rounds` rounds in each
// trial and records the sparsity of the uncoloured subgraph.
SparsityExperimentReport residual_sparsity_experiment(const Graph& g, const CorrespondenceAssignment& c, int rounds,
                                                      std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

inline constexpr Vertex max_exact_vertices = 20;

// Exact chromatic number by backtracking. Throws std::length_error for n > 20.
int exact_chromatic(const Graph& g);

// A valid C-colouring when one exists. Throws std::length_error for n > 20.
std::optional<PartialColouring> exact_correspondence_colouring(const Graph& g, const CorrespondenceAssignment& c);

}  // namespace sparsecol::harness
