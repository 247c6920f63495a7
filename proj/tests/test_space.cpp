#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bergman/oracles.hpp"
#include "bergman/space.hpp"

using namespace bergman;

TEST_CASE("square-integrability criterion") {
    const DomainSpec s25(2, Rational{5, 2});
    CHECK(is_square_integrable(s25, MultiIndex{{1, 0}}));
    CHECK_FALSE(is_square_integrable(s25, MultiIndex{{1, 1}}));

    // a = 1, n = 2: even the constant fails (0 < 0 is false).
    const DomainSpec s1(2, Rational{1, 1});
    CHECK_FALSE(is_square_integrable(s1, MultiIndex{{0, 0}}));
}

TEST_CASE("dimension formula examples") {
    CHECK(bergman_dimension(DomainSpec(2, Rational{5, 2})) == 3);
    CHECK(bergman_dimension(DomainSpec(3, Rational{1, 1})) == 1);
    CHECK(bergman_dimension(DomainSpec(2, Rational{1, 2})) == 0);
    CHECK(bergman_dimension(DomainSpec(4, Rational{1, 1})) == 5);
}

TEST_CASE("basis enumeration matches the closed form across case boundaries") {
    for (int n = 2; n <= 6; ++n) {
        long long prev = -1;
        for (int j = 1; j <= 40; ++j) {
            const DomainSpec spec(n, Rational{j, 2LL * (n - 1)});
            CAPTURE(n);
            CAPTURE(j);
            const long long formula = bergman_dimension(spec);
            const auto basis = enumerate_basis(spec);
            CHECK(formula == static_cast<long long>(basis.size()));
            CHECK(formula >= prev);  // monotone in a
            prev = formula;
        }
    }
}

TEST_CASE("boundary tie-break takes the larger dimension") {
    // At a = (k+2)/(n-1) exactly the window is closed on the right.
    const DomainSpec at_boundary(3, Rational{3, 2});  // (n-1)a = 3, k = 1
    CHECK(bergman_dimension(at_boundary) == 4);       // binom(4,1)
    // Just above the boundary the dimension jumps.
    const DomainSpec above(3, Rational{31, 20});
    CHECK(bergman_dimension(above) == 10);  // k = 2: binom(5,2)
    // Degree-2 monomials sit exactly on |p| = (n-1)a - 1 = 2 and are excluded.
    CHECK_FALSE(is_square_integrable(at_boundary, MultiIndex{{2, 0, 0}}));
    CHECK(is_square_integrable(at_boundary, MultiIndex{{1, 0, 0}}));
}

TEST_CASE("basis order is graded lexicographic") {
    const auto basis = enumerate_basis(DomainSpec(2, Rational{5, 2}));
    REQUIRE(basis.size() == 3);
    CHECK(basis[0] == MultiIndex{{0, 0}});
    CHECK(basis[1] == MultiIndex{{0, 1}});
    CHECK(basis[2] == MultiIndex{{1, 0}});

    CHECK(enumerate_basis(DomainSpec(2, Rational{1, 1})).empty());
}

TEST_CASE("monomial norms: convergent case validated by Monte Carlo") {
    const DomainSpec spec(2, Rational{5, 2});
    QuadratureConfig cfg;
    const auto norm = monomial_norm_sq(spec, MultiIndex{{0, 0}}, cfg);
    REQUIRE(norm.finite());
    CHECK(norm.outcome.verdict == Verdict::Converged);

    // Same-truncation comparison removes the tail from the Monte Carlo side.
    const double bound = 50.0;
    const auto truncated =
        integrate_interval(monomial_integrand(spec, MultiIndex::zero(2)), 0.0, bound, cfg);
    const double quad = truncated.value * std::pow(std::numbers::pi, 2);
    const auto mc = mc_moment(spec, MultiIndex::zero(2), bound, 400000, 31);
    CHECK(std::fabs(mc.value - quad) <= std::max(3.0 * mc.std_error, 0.02 * quad));
}

TEST_CASE("monomial norms: divergent case carries the fitted exponent") {
    const DomainSpec spec(2, Rational{5, 2});
    QuadratureConfig cfg;
    const auto norm = monomial_norm_sq(spec, MultiIndex{{1, 1}}, cfg);
    CHECK_FALSE(norm.finite());
    CHECK(std::isinf(norm.norm_sq));
    CHECK(norm.outcome.verdict == Verdict::Diverges);
    // Tail power |p| - a(n-1) + 1 = 0.5.
    CHECK(std::fabs(norm.outcome.growth_exponent - 0.5) < 0.1);
}

TEST_CASE("monomial norm example in n = 3") {
    const DomainSpec spec(3, Rational{2, 1});
    QuadratureConfig cfg;
    const auto norm = monomial_norm_sq(spec, MultiIndex{{0, 0, 1}}, cfg);
    CHECK(norm.finite());
    CHECK(norm.norm_sq > 0.0);
}

TEST_CASE("verdicts match the closed form for every degree <= 4 on a spec grid") {
    QuadratureConfig cfg;
    struct GridSpec {
        int n;
        Rational a;
    };
    const GridSpec grid[] = {
        {2, {1, 2}}, {2, {1, 1}}, {2, {5, 2}}, {2, {11, 4}}, {2, {7, 2}},
        {3, {1, 2}}, {3, {5, 4}}, {3, {3, 2}},
        {4, {9, 10}}, {4, {1, 1}},
    };
    for (const auto& g : grid) {
        CAPTURE(g.n);
        CAPTURE(g.a.str());
        const DomainSpec spec(g.n, g.a);
        // monomial_norm_sq throws VerdictMismatch on any disagreement.
        const auto results = classify_monomials(spec, 4, cfg);
        for (const auto& r : results) {
            CHECK(r.finite() == is_square_integrable(spec, r.p));
        }
    }
}

TEST_CASE("parallel and serial classification agree exactly") {
    const DomainSpec spec(3, Rational{5, 4});
    QuadratureConfig cfg;
    const auto serial = classify_monomials(spec, 3, cfg, false);
    const auto parallel = classify_monomials(spec, 3, cfg, true);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].p == parallel[i].p);
        CHECK(serial[i].outcome.verdict == parallel[i].outcome.verdict);
        CHECK(serial[i].outcome.value == parallel[i].outcome.value);
    }
}

TEST_CASE("monomials are orthogonal in the Monte Carlo sense") {
    const DomainSpec spec(2, Rational{5, 2});
    const auto pts = sample_points(spec, 60000, 10.0, 77);
    // Importance weights for the sampling law: uniform rho, uniform slice.
    auto weight = [&spec](const Point& z) {
        const double rho = std::norm(z[1]);
        return 10.0 * radial_interval(spec, rho).length() * std::pow(std::numbers::pi, 2);
    };
    struct Pair {
        MultiIndex p, q;
    };
    const Pair pairs[] = {
        {MultiIndex{{0, 0}}, MultiIndex{{1, 0}}},
        {MultiIndex{{0, 0}}, MultiIndex{{0, 1}}},
        {MultiIndex{{0, 1}}, MultiIndex{{1, 0}}},
    };
    for (const auto& pr : pairs) {
        std::complex<double> sum = 0.0;
        double sumsq_re = 0.0, sumsq_im = 0.0;
        for (const auto& z : pts) {
            std::complex<double> v = weight(z);
            for (int k = 0; k < 2; ++k) {
                for (int e = 0; e < pr.p.p[k]; ++e) v *= z[k];
                for (int e = 0; e < pr.q.p[k]; ++e) v *= std::conj(z[k]);
            }
            sum += v;
            sumsq_re += v.real() * v.real();
            sumsq_im += v.imag() * v.imag();
        }
        const double nn = static_cast<double>(pts.size());
        const std::complex<double> mean = sum / nn;
        const double se_re = std::sqrt(sumsq_re / nn) / std::sqrt(nn);
        const double se_im = std::sqrt(sumsq_im / nn) / std::sqrt(nn);
        CHECK(std::fabs(mean.real()) <= 3.0 * se_re);
        CHECK(std::fabs(mean.imag()) <= 3.0 * se_im);
    }
}

TEST_CASE("kernel coefficients in the theorem window") {
    QuadratureConfig cfg;

    SUBCASE("n = 2: positivity") {
        const auto coeffs = kernel_coefficients(DomainSpec(2, Rational{5, 2}), cfg);
        REQUIRE(coeffs.c.size() == 3);
        for (double c : coeffs.c) CHECK(c > 0.0);
    }

    SUBCASE("n = 3: symmetry of c_1 and c_2") {
        const auto coeffs = kernel_coefficients(DomainSpec(3, Rational{5, 4}), cfg);
        REQUIRE(coeffs.c.size() == 4);
        CHECK(std::fabs(coeffs.c[1] - coeffs.c[2]) <=
              coeffs.err[1] + coeffs.err[2] + 1e-12 * coeffs.c[1]);
    }

    SUBCASE("outside the window") {
        CHECK_THROWS_AS(kernel_coefficients(DomainSpec(2, Rational{1, 1}), cfg),
                        OutsideTheoremWindow);
        CHECK_THROWS_AS(kernel_coefficients(DomainSpec(2, Rational{7, 2}), cfg),
                        OutsideTheoremWindow);
        // Window edge a = 3/(n-1) itself is inside.
        CHECK_NOTHROW(kernel_coefficients(DomainSpec(2, Rational{3, 1}), cfg));
    }

    SUBCASE("volume normalization against Monte Carlo") {
        const DomainSpec spec(2, Rational{5, 2});
        const auto coeffs = kernel_coefficients(spec, cfg);
        // c_0 * vol = 1 with vol = truncated MC + quadrature tail.
        const double bound = 40.0;
        const auto mc = mc_moment(spec, MultiIndex::zero(2), bound, 500000, 13);
        const auto profile = monomial_integrand(spec, MultiIndex::zero(2));
        const auto head = integrate_interval(profile, 0.0, bound, cfg);
        const double tail = (1.0 / coeffs.c[0]) - head.value * std::pow(std::numbers::pi, 2);
        const double vol_est = mc.value + tail;
        CHECK(std::fabs(coeffs.c[0] * vol_est - 1.0) <=
              0.02 + 3.0 * mc.std_error * coeffs.c[0]);
    }
}

TEST_CASE("multi-index helpers") {
    CHECK(MultiIndex::zero(3).degree() == 0);
    CHECK(MultiIndex::unit(3, 1) == MultiIndex{{0, 1, 0}});
    CHECK(MultiIndex{{2, 1, 0}}.degree() == 3);
    CHECK(MultiIndex{{2, 1, 0}}.str() == "(2,1,0)");
    CHECK(indices_of_degree(2, 1).size() == 2);
    CHECK(indices_up_to_degree(3, 4).size() == 35);
}
