#include <doctest.h>

#include <cmath>
#include <string>

#include "sparsecol/bounds.hpp"

using namespace sparsecol::bounds;

TEST_CASE("g function")
{
    CHECK(g_func(0.2, 0.0) == 0.0);
    // mpmath at 50 digits.
    CHECK(g_func(0.0825, 0.345) == doctest::Approx(0.047758299569474823866).epsilon(1e-14));
    // Increasing in delta while sqrt(delta) < 2(1-eps) e^{-1/(8(1-eps))}: all of
    // [0, 1] for eps up to about 0.38, only delta < 0.6065 at eps = 0.5.
    for (double eps : {0.01, 0.1, 0.25, 0.35, 0.45, 0.5}) {
        const double a = 1 - eps;
        const double top = std::min(1.0, std::pow(2 * a * std::exp(-1 / (8 * a)), 2));
        double prev = g_func(eps, 0.0);
        for (int i = 1; i <= 200; ++i) {
            const double v = g_func(eps, top * i / 200.0);
            CHECK(v > prev);
            prev = v;
        }
    }
    CHECK(g_func(0.5, 0.9) < g_func(0.5, 0.6));
    // Decreasing in eps at fixed delta.
    for (double delta : {0.1, 0.345, 0.9}) {
        double prev = g_func(0.0005, delta);
        for (int i = 2; i <= 1000; ++i) {
            const double v = g_func(i * 0.0005, delta);
            CHECK(v < prev);
            prev = v;
        }
    }
    // eps e^{-1/(2(1-eps))} increasing on [0, 0.5].
    double prev = -1;
    for (int i = 0; i <= 1000; ++i) {
        const double e = i * 0.0005;
        const double v = e * std::exp(-1 / (2 * (1 - e)));
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(g_func(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(g_func(0.1, -0.1), std::domain_error);
}

TEST_CASE("condition check")
{
    CHECK(condition_check(1e-6, 0.9).holds);
    CHECK(condition_check(1e-6, 0.9).margin == doctest::Approx(0.1751).epsilon(1e-3));
    CHECK_FALSE(condition_check(0.4, 0.01).holds);
    CHECK(condition_check(0.4, 0.01).margin == doctest::Approx(-0.3966).epsilon(1e-3));

    const ConditionReport r = condition_check(0.0825, 0.345);
    // mpmath at 50 digits: -1.390025565338951412957998914629840123828e-4
    CHECK(r.margin_digits.substr(0, 36) == "-1.390025565338951412957998914629840");
    CHECK(std::abs(r.margin) < 5e-4);
    CHECK_THROWS_AS(condition_check(0.5, 0.3), std::domain_error);
    CHECK_THROWS_AS(condition_check(0.1, 1.5), std::domain_error);
}

TEST_CASE("approximate eps")
{
    CHECK(approx_eps(0.24, EpsVariant::bruhn_joos) == doctest::Approx(0.0347).epsilon(0.015));
    CHECK(approx_eps(0.0) == 0.0);
    CHECK(approx_eps(0.5) == doctest::Approx(0.3012 * 0.5 - 0.1283 * std::pow(0.5, 1.5)));
    const double root_e = std::sqrt(std::exp(1.0));
    CHECK(std::abs(root_e * 0.1827 - 0.3012) < 5e-4);
    CHECK(std::abs(root_e * 0.0778 - 0.1283) < 5e-4);
    CHECK_THROWS_AS(approx_eps(0.95), std::domain_error);
}

TEST_CASE("density delta")
{
    CHECK(density_delta(1.0 / 3, 0.0) == doctest::Approx(1.0 / 18));
    CHECK(density_delta(Rational(1, 3), Rational(0)) == Rational(1, 18));
    for (double eps : {0.0, 0.01, 0.05, 0.1, 0.16}) {
        const double old = 0.25 * (1.0 / 6 - eps) * (1.0 / 6 - eps);
        CHECK(density_delta(1.0 / 3, eps) / old == doctest::Approx(8.0));
    }
    CHECK_THROWS(density_delta(0.2, 0.1));
}

TEST_CASE("critical density count")
{
    CHECK(critical_density_count(10, 10, 5) == Rational(15, 2));
    CHECK(critical_density_count(5, 10, 5) == 0);
    CHECK(critical_density_count(7, 10, 5) == 0);  // 2k - D - w + 1 = 0
    CHECK(critical_density_count(8, 10, 5) == Rational(1, 2));
    CHECK(critical_density_count(9, 10, 5) == 3);
}

TEST_CASE("epsilon for alpha")
{
    CHECK(format_fixed(epsilon_for_alpha(0.30)) == "0.0356");
    CHECK(format_fixed(epsilon_for_alpha(0.90)) == "0.0752");
    CHECK(format_fixed(epsilon_for_alpha(0.02)) == "0.0029");
    CHECK(format_fixed(epsilon_for_alpha(0.44)) == "0.0477");
    const auto t = table1();
    REQUIRE(t.size() == 45);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i].eps >= t[i - 1].eps);
}

TEST_CASE("strong edge functions")
{
    // f = f0 at x = beta + gamma/2.
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int l = 0; l < 6; ++l) {
                const double a = 0.05 * i, b = 0.05 * j, g = 0.1 * l;
                CHECK(strong_f(a, b, g, 0.164) == doctest::Approx(strong_f0(a, b, 0.164, b + g / 2)).epsilon(1e-12));
            }

    const double f2 = strong_f2(0.164, 0.164);
    CHECK(f2 < 1.309);
    CHECK(f2 == doctest::Approx(4 * 0.164 - 0.164 * 0.164 + 31.0 / 6 - 128 / (3 * (10 - 3 * 0.164))));
    CHECK(f2 == doctest::Approx(1.308321501051745898).epsilon(1e-15));

    for (double beta : {0.0, 0.05, 0.1, 0.164, 0.3}) {
        const double x = strong_f1_argmax(beta);
        const double h = 1e-5;
        const double d1 = (strong_f1(beta, 0.164, x + h) - strong_f1(beta, 0.164, x - h)) / (2 * h);
        CHECK(std::abs(d1) < 1e-8);
        const double d2 = strong_f1(beta, 0.164, x + h) - 2 * strong_f1(beta, 0.164, x) + strong_f1(beta, 0.164, x - h);
        CHECK(d2 < 0);
        CHECK(strong_f1(beta, 0.164, x) == doctest::Approx(strong_f2(beta, 0.164)));
    }

    // f2 increasing in beta for beta <= eta <= 0.3.
    for (double eta : {0.1, 0.164, 0.3}) {
        double prev = strong_f2(0, eta);
        for (int i = 1; i <= 100; ++i) {
            const double b = eta * i / 100;
            CHECK(strong_f2(b, eta) > prev);
            prev = strong_f2(b, eta);
        }
    }

    // f <= f1 <= f2(beta) <= f2(eta) with alpha + beta <= eta.
    const double eta = 0.164;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; i + j <= 20; ++j)
            for (int l = 0; l <= 20; ++l) {
                const double a = eta * i / 20, b = eta * j / 20, g = 0.05 * l;
                const double x = b + g / 2;
                const double f = strong_f(a, b, g, eta);
                CHECK(f <= strong_f1(b, eta, x) + 1e-12);
                CHECK(strong_f1(b, eta, x) <= strong_f2(b, eta) + 1e-12);
                CHECK(strong_f2(b, eta) <= strong_f2(eta, eta) + 1e-12);
            }
}

TEST_CASE("strong edge constants")
{
    const StrongEdgeConstants c = strong_edge_constants();
    CHECK(c.coefficient == Rational(367, 200));
    CHECK(c.delta_from_f2 == doctest::Approx(0.345839249474127).epsilon(1e-12));
    CHECK(std::abs(c.delta_from_f2 - 0.345) < 1e-3);
    CHECK(c.condition.margin_digits == condition_check(0.0825, 0.345).margin_digits);
}

TEST_CASE("exact decimal")
{
    CHECK(exact_decimal(0.164) == Rational(41, 250));
    CHECK(exact_decimal(0.0825) == Rational(33, 400));
    CHECK(exact_decimal(-2.5) == Rational(-5, 2));
    CHECK(exact_decimal(1e-4) == Rational(1, 10000));
}
