#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace sparsecol::bounds {

using HighPrecision = boost::multiprecision::cpp_dec_float_50;
using Rational = boost::multiprecision::cpp_rational;

// Exact rational value of the shortest decimal that round-trips to x,
// e.g. 0.164 -> 41/250.
Rational exact_decimal(double x);

// g(eps, delta) = delta/(2(1-eps)) e^{-1/(1-eps)} - delta^{3/2}/(6(1-eps)^2) e^{-7/(8(1-eps))}
template <class Real>
Real g_func_t(const Real& eps, const Real& delta)
{
    using std::exp;
    using std::sqrt;
    const Real one_minus = Real(1) - eps;
    return delta / (2 * one_minus) * exp(-1 / one_minus) -
           delta * sqrt(delta) / (6 * one_minus * one_minus) * exp(Real(-7) / (8 * one_minus));
}

// Throws std::domain_error for eps >= 1 or delta < 0.
double g_func(double eps, double delta);
HighPrecision g_func_hp(const HighPrecision& eps, const HighPrecision& delta);

struct ConditionReport {
    bool holds = false;        // eps < e^{1/(2(1-eps))} g(eps, delta), decided in high precision
    double margin = 0.0;       // rhs - eps
    std::string margin_digits; // same, 40 significant digits
    double rhs = 0.0;
};

// Requires 0 < eps < 0.5 and 0 <= delta <= 1.
ConditionReport condition_check(double eps, double delta);

enum class EpsVariant { ours, bruhn_joos };

// ours: 0.3012 d - 0.1283 d^{3/2}; bruhn_joos: 0.1827 d - 0.0778 d^{3/2}.
// delta must lie in [0, 0.9].
double approx_eps(double delta, EpsVariant variant = EpsVariant::ours);

// (alpha - 2 eps)^2 / 2; requires eps < alpha / 2.
double density_delta(double alpha, double eps);
Rational density_delta(const Rational& alpha, const Rational& eps);

// 1/2 C(max(2k - Delta - omega + 1, 0), 2), exactly.
Rational critical_density_count(long long k, long long max_degree, long long omega);

// Largest eps on the grid with
// eps <= 0.3012 (a/2)(1-2eps)^2 - 0.1283 a^2/(2 sqrt 2) (1-2eps)^3,
// found by scanning down from 1/2.
double epsilon_for_alpha(double alpha, double grid = 1e-4);

struct Table1Row {
    double alpha;
    double eps;
};

// alpha = 0.02, 0.04, ..., 0.90.
std::vector<Table1Row> table1(double grid = 1e-4);

// Fixed 4-decimal rendering used for the table.
std::string format_fixed(double value, int decimals = 4);

// Strong edge colouring density functions.
double strong_f(double alpha, double beta, double gamma, double eta);
double strong_f0(double alpha, double beta, double eta, double x);
double strong_f1(double beta, double eta, double x);
double strong_f2(double beta, double eta);
// (4 + 2 beta) / (10 - 3 beta)
double strong_f1_argmax(double beta);

struct StrongEdgeConstants {
    double eta = 0.164;
    double f2 = 0.0;                // f2(eta, eta)
    double delta_from_f2 = 0.0;     // 1 - f2 / 2
    double eps = 0.0825;
    double delta = 0.345;
    ConditionReport condition;      // at (eps, delta)
    Rational coefficient;           // (1 - eps) * 2
};

StrongEdgeConstants strong_edge_constants();

}  // namespace sparsecol::bounds
