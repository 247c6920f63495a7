#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bergman/quadrature.hpp"

using namespace bergman;

TEST_CASE("exponential fixture reproduces the exact value within rel_tol") {
    QuadratureConfig cfg;
    const auto out = integrate_half_line([](double x) { return std::exp(-x); }, cfg);
    CHECK(out.verdict == Verdict::Converged);
    CHECK(std::fabs(out.value - 1.0) <= cfg.rel_tol * 1.0 + out.error_estimate);
    CHECK(out.within_tolerance(cfg));
}

TEST_CASE("power fixture (1+x)^(-5/2) gives 2/3 within rel_tol") {
    QuadratureConfig cfg;
    const auto out = integrate_half_line([](double x) { return std::pow(1.0 + x, -2.5); }, cfg);
    CHECK(out.verdict == Verdict::Converged);
    CHECK(std::fabs(out.value - 2.0 / 3.0) <= cfg.rel_tol * (2.0 / 3.0) + out.error_estimate);
}

TEST_CASE("finite interval integration matches antiderivatives") {
    QuadratureConfig cfg;
    const auto out = integrate_interval([](double x) { return x * x; }, 0.0, 2.0, cfg);
    CHECK(out.verdict == Verdict::Converged);
    CHECK(out.value == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

    const auto empty = integrate_interval([](double x) { return x; }, 1.0, 1.0, cfg);
    CHECK(empty.verdict == Verdict::Converged);
    CHECK(empty.value == 0.0);
}

TEST_CASE("non-finite integrand values are rejected") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(integrate_half_line([](double x) { return x < 1.0 ? 1.0 : NAN; }, cfg),
                    NonFiniteIntegrand);
    CHECK_THROWS_AS(
        integrate_interval([](double) { return std::numeric_limits<double>::infinity(); }, 0.0,
                           1.0, cfg),
        NonFiniteIntegrand);
}

TEST_CASE("budget exhaustion reports Inconclusive, never a fake convergence") {
    QuadratureConfig cfg;
    cfg.max_panels = 8;
    // Oscillation too fine for eight panels.
    const auto out =
        integrate_interval([](double x) { return std::sin(500.0 * x); }, 0.0, 30.0, cfg);
    CHECK(out.verdict == Verdict::Inconclusive);
    CHECK(out.panels_used <= 8);
}

TEST_CASE("a divergent integrand exhausts the budget Inconclusively") {
    QuadratureConfig cfg;
    cfg.max_panels = 600;
    const auto out = integrate_half_line([](double x) { return 1.0 / (1.0 + x); }, cfg);
    CHECK(out.verdict == Verdict::Inconclusive);
}

TEST_CASE("probe classifies (1+rho)^s across the dichotomy") {
    QuadratureConfig cfg;

    struct Case {
        double s;
        bool diverges;
    };
    // Exponents bounded away from the s = -1 boundary by at least 0.1,
    // plus the boundary itself (log divergence).
    const Case cases[] = {{-2.0, false}, {-1.5, false}, {-1.2, false}, {-1.1, false},
                          {-1.0, true},  {-0.9, true},  {-0.5, true},  {0.0, true},
                          {0.5, true}};
    for (const auto& c : cases) {
        CAPTURE(c.s);
        const auto out =
            probe_divergence([s = c.s](double x) { return std::pow(1.0 + x, s); }, cfg);
        if (c.diverges) {
            CHECK(out.verdict == Verdict::Diverges);
            if (c.s > -1.0) {
                CHECK(std::fabs(out.growth_exponent - (c.s + 1.0)) < 0.1);
            }
        } else {
            CHECK(out.verdict == Verdict::Converged);
        }
    }
}

TEST_CASE("probe of the constant integrand reports exponent 1") {
    QuadratureConfig cfg;
    const auto out = probe_divergence([](double) { return 1.0; }, cfg);
    CHECK(out.verdict == Verdict::Diverges);
    CHECK(std::fabs(out.growth_exponent - 1.0) < 0.05);
}

TEST_CASE("probe of (1+rho)^(-2) converges to the true integral") {
    QuadratureConfig cfg;
    const auto out = probe_divergence([](double x) { return std::pow(1.0 + x, -2.0); }, cfg);
    CHECK(out.verdict == Verdict::Converged);
    CHECK(out.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(out.within_tolerance(cfg));
}

TEST_CASE("probe handles a compactly supported integrand") {
    QuadratureConfig cfg;
    const auto out =
        probe_divergence([](double x) { return x < 5.0 ? std::sin(x) * std::sin(x) : 0.0; }, cfg);
    CHECK(out.verdict == Verdict::Converged);
    // integral of sin^2 over [0,5] = 5/2 - sin(10)/4
    CHECK(out.value == doctest::Approx(2.5 - std::sin(10.0) / 4.0).epsilon(1e-9));
}

TEST_CASE("additivity within combined error estimates") {
    QuadratureConfig cfg;
    auto f = [](double x) { return std::exp(-x); };
    auto g = [](double x) { return std::pow(1.0 + x, -3.0); };
    const auto fi = integrate_half_line(f, cfg);
    const auto gi = integrate_half_line(g, cfg);
    const auto both = integrate_half_line([&](double x) { return f(x) + g(x); }, cfg);
    REQUIRE(both.verdict == Verdict::Converged);
    CHECK(std::fabs(both.value - (fi.value + gi.value)) <=
          fi.error_estimate + gi.error_estimate + both.error_estimate + 1e-14);
}

TEST_CASE("positive scaling factors pass through") {
    QuadratureConfig cfg;
    auto f = [](double x) { return std::exp(-0.5 * x); };
    const auto base = integrate_half_line(f, cfg);
    const double lambda = 37.5;
    const auto scaled = integrate_half_line([&](double x) { return lambda * f(x); }, cfg);
    REQUIRE(scaled.verdict == Verdict::Converged);
    CHECK(scaled.value ==
          doctest::Approx(lambda * base.value).epsilon(10.0 * cfg.rel_tol));
}

TEST_CASE("halving rel_tol moves the value by at most the larger error") {
    QuadratureConfig coarse;
    coarse.rel_tol = 1e-6;
    QuadratureConfig fine = coarse;
    fine.rel_tol = 5e-7;
    auto f = [](double x) { return std::pow(1.0 + 0.3 * x, -2.2) * (2.0 + std::cos(x)); };
    const auto a = integrate_half_line(f, coarse);
    const auto b = integrate_half_line(f, fine);
    REQUIRE(a.verdict == Verdict::Converged);
    REQUIRE(b.verdict == Verdict::Converged);
    CHECK(std::fabs(a.value - b.value) <= std::max(a.error_estimate, b.error_estimate));
}

TEST_CASE("config validation") {
    QuadratureConfig cfg;
    cfg.rel_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.growth_window = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.tail_cut = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
