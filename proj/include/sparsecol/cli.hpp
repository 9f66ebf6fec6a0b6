#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace sparsecol::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;  // computational failure, e.g. restart exhaustion
inline constexpr int exit_usage = 2;

// Resolved settings for one invocation. NaN marks an unset real parameter.
struct RunConfig {
    std::string subcommand;
    std::string mode;  // bounds / simulate / oracle sub-mode

    std::string input;
    std::string assignment;
    // Generator spec; at most one of these or `input` may be given.
    int empty = -1, complete = -1, cycle = -1, path = -1, star = -1, c5_blowup = -1, projective_plane = -1;
    bool petersen = false;
    std::vector<int> random_regular;     // n, d
    std::vector<double> gnp;             // n, p

    int k = -1;
    double eta = 0.164;
    double eps = std::numeric_limits<double>::quiet_NaN();
    double delta = std::numeric_limits<double>::quiet_NaN();
    double delta_prime = std::numeric_limits<double>::quiet_NaN();
    double beta = std::numeric_limits<double>::quiet_NaN();
    double tau = 0.5;
    double slack_c = 3.0;
    std::string variant = "ours";
    std::uint64_t trials = 1000;
    int rounds = 3;
    int max_restarts = 200;
    bool best_effort = false;
    bool pairs = false;
    std::string profile = "asymptotic";
    std::uint64_t seed = 0;
    unsigned threads = 1;  // never part of a report

    std::string out;
    std::string format;  // json, csv or dimacs; empty = from extension
    std::string config;
};

// Runs one command line. Returns exit_ok, exit_failure or exit_usage.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv);

}  // namespace sparsecol::cli
