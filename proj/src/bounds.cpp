#include "sparsecol/bounds.hpp"

#include <cstdio>
#include <cstdlib>
#include <ios>

namespace sparsecol::bounds {

double g_func(double eps, double delta)
{
    if (!(eps < 1.0)) throw std::domain_error("g: eps must be < 1");
    if (delta < 0.0) throw std::domain_error("g: delta must be >= 0");
    return g_func_t(eps, delta);
}

HighPrecision g_func_hp(const HighPrecision& eps, const HighPrecision& delta)
{
    if (!(eps < 1)) throw std::domain_error("g: eps must be < 1");
    if (delta < 0) throw std::domain_error("g: delta must be >= 0");
    return g_func_t(eps, delta);
}

namespace {

// Shortest decimal string that round-trips to x, so 0.0825 stays 0.0825
// instead of inheriting binary64 noise.
std::string shortest_decimal(double x)
{
    char buf[64];
    for (int digits = 1; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

HighPrecision from_decimal(double x) { return HighPrecision(shortest_decimal(x)); }

}  // namespace

Rational exact_decimal(double x)
{
    if (!std::isfinite(x)) throw std::domain_error("exact_decimal: value must be finite");
    const std::string s = shortest_decimal(x);
    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    int exponent = std::stoi(s.substr(e + 1));
    const bool negative = !mantissa.empty() && mantissa[0] == '-';
    if (negative) mantissa.erase(0, 1);
    if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
        exponent -= static_cast<int>(mantissa.size() - dot - 1);
        mantissa.erase(dot, 1);
    }
    Rational r{boost::multiprecision::cpp_int(mantissa)};
    const Rational ten = 10;
    for (int i = 0; i < std::abs(exponent); ++i) {
        if (exponent > 0) {
            r *= ten;
        } else {
            r /= ten;
        }
    }
    if (negative) r = -r;
    return r;
}

ConditionReport condition_check(double eps, double delta)
{
    if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("condition: eps must lie in (0, 0.5)");
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("condition: delta must lie in [0, 1]");
    const HighPrecision e = from_decimal(eps);
    const HighPrecision d = from_decimal(delta);
    const HighPrecision rhs = exp(1 / (2 * (1 - e))) * g_func_hp(e, d);
    const HighPrecision margin = rhs - e;
    ConditionReport r;
    r.holds = margin > 0;
    r.margin = margin.convert_to<double>();
    r.rhs = rhs.convert_to<double>();
    r.margin_digits = margin.str(40, std::ios_base::scientific);
    return r;
}

double approx_eps(double delta, EpsVariant variant)
{
    if (!(delta >= 0.0 && delta <= 0.9)) throw std::domain_error("approx_eps: delta must lie in [0, 0.9]");
    const double d32 = delta * std::sqrt(delta);
    return variant == EpsVariant::ours ? 0.3012 * delta - 0.1283 * d32 : 0.1827 * delta - 0.0778 * d32;
}

double density_delta(double alpha, double eps)
{
    if (!(eps < alpha / 2)) throw std::invalid_argument("density_delta: requires eps < alpha / 2");
    const double t = alpha - 2 * eps;
    return t * t / 2;
}

Rational density_delta(const Rational& alpha, const Rational& eps)
{
    if (!(eps < alpha / 2)) throw std::invalid_argument("density_delta: requires eps < alpha / 2");
    const Rational t = alpha - 2 * eps;
    return t * t / 2;
}

Rational critical_density_count(long long k, long long max_degree, long long omega)
{
    const long long m = std::max(2 * k - max_degree - omega + 1, 0LL);
    return Rational(m * (m - 1) / 2, 2);
}

double epsilon_for_alpha(double alpha, double grid)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("epsilon_for_alpha: alpha must lie in (0, 1]");
    if (!(grid > 0.0)) throw std::domain_error("epsilon_for_alpha: grid must be positive");
    const double c2 = alpha * alpha / (2 * std::sqrt(2.0));
    const auto steps = static_cast<long long>(std::floor(0.5 / grid + 1e-9));
    for (long long m = steps; m >= 0; --m) {
        const double eps = static_cast<double>(m) * grid;
        const double s = 1 - 2 * eps;
        if (eps <= 0.3012 * (alpha / 2) * s * s - 0.1283 * c2 * s * s * s) return eps;
    }
    return 0.0;
}

std::vector<Table1Row> table1(double grid)
{
    std::vector<Table1Row> rows;
    for (int j = 1; j <= 45; ++j) {
        const double alpha = j / 50.0;
        rows.push_back({alpha, epsilon_for_alpha(alpha, grid)});
    }
    return rows;
}

std::string format_fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

double strong_f(double alpha, double beta, double gamma, double eta)
{
    const double s = 2 - alpha - beta;
    if (!(s > 0)) throw std::domain_error("strong_f: requires alpha + beta < 2");
    const double a = 2 - alpha;
    const double q = 2 - alpha - 2 * beta - gamma;
    return s - gamma / 2 - 3 * q * q / (2 * a * a) - gamma * gamma / (2 * s) + eta * s;
}

double strong_f0(double alpha, double beta, double eta, double x)
{
    const double s = 2 - alpha - beta;
    if (!(s > 0)) throw std::domain_error("strong_f0: requires alpha + beta < 2");
    const double a = 2 - alpha;
    const double q = 2 - alpha - 2 * x;
    return 2 - alpha - x - 3 * q * q / (2 * a * a) - 2 * (x - beta) * (x - beta) / s + eta * s;
}

double strong_f1(double beta, double eta, double x)
{
    if (!(beta < 2)) throw std::domain_error("strong_f1: requires beta < 2");
    return 0.5 + 2 * x - 1.5 * x * x - 2 * (x - beta) * (x - beta) / (2 - beta) + eta * (2 - beta);
}

double strong_f2(double beta, double eta)
{
    if (!(beta < 10.0 / 3)) throw std::domain_error("strong_f2: requires beta < 10/3");
    return (2 - eta) * beta + 31.0 / 6 - 128 / (3 * (10 - 3 * beta)) + 2 * eta;
}

double strong_f1_argmax(double beta)
{
    if (!(beta < 10.0 / 3)) throw std::domain_error("strong_f1_argmax: requires beta < 10/3");
    return (4 + 2 * beta) / (10 - 3 * beta);
}

StrongEdgeConstants strong_edge_constants()
{
    StrongEdgeConstants c;
    c.f2 = strong_f2(c.eta, c.eta);
    c.delta_from_f2 = 1 - c.f2 / 2;
    c.condition = condition_check(c.eps, c.delta);
    c.coefficient = (1 - Rational(33, 400)) * 2;
    return c;
}

}  // namespace sparsecol::bounds
