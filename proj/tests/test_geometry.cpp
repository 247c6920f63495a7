#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/geometry.hpp"
#include "bergman/oracles.hpp"
#include "bergman/rng.hpp"

using namespace bergman;

namespace {

Point random_point(Rng& rng, int n, double scale = 1.0) {
    Point z(static_cast<std::size_t>(n));
    for (auto& zk : z) {
        zk = Complex(scale * (2.0 * rng.u01() - 1.0), scale * (2.0 * rng.u01() - 1.0));
    }
    return z;
}

const KernelForm kFixture = KernelForm::make(2, {1.7, 0.9, 2.3});
const KernelForm kFs3 = KernelForm::make(3, {1.0, 1.0, 1.0, 1.0});

}  // namespace

TEST_CASE("kernel evaluation") {
    const Point zero(2, Complex{});
    CHECK(kernel_eval(kFixture, zero, zero) == Complex(1.7));

    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const Point z = random_point(rng, 2, 2.0);
        const Point w = random_point(rng, 2, 2.0);
        CHECK(std::abs(kernel_eval(kFixture, z, w) - std::conj(kernel_eval(kFixture, w, z))) <
              1e-14);
        // Cartan condition (i): K(z, 0) is the constant c_0.
        CHECK(kernel_eval(kFixture, z, zero) == Complex(1.7));
        CHECK(kernel_diag(kFixture, z) >= 1.7);
    }
}

TEST_CASE("metric at the origin is diag(c_k / c_0)") {
    const Point zero(2, Complex{});
    const auto g = metric_at(kFixture, zero);
    CHECK(std::abs(g.m(0, 0) - Complex(0.9 / 1.7)) < 1e-15);
    CHECK(std::abs(g.m(1, 1) - Complex(2.3 / 1.7)) < 1e-15);
    CHECK(std::abs(g.m(0, 1)) < 1e-15);

    // One-dimensional analog with c_0 = c_1 = 1 gives g = 1 at the origin.
    const KernelForm fs1 = KernelForm::make(1, {1.0, 1.0});
    const auto g1 = metric_at(fs1, Point(1, Complex{}));
    CHECK(std::abs(g1.m(0, 0) - Complex(1.0)) < 1e-15);
}

TEST_CASE("metric is positive definite at random points") {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        const Point z = random_point(rng, 3, 3.0);
        const auto g = metric_at(kFs3, z);
        const auto eigs = g.eigenvalues();
        for (double ev : eigs) CHECK(ev > 0.0);
    }
}

TEST_CASE("metric matches the finite-difference log-kernel Hessian") {
    Rng rng(23);
    for (int t = 0; t < 6; ++t) {
        const Point z = random_point(rng, 2, 1.5);
        const auto g = metric_at(kFixture, z);
        const auto fd = fd_log_kernel_hessian(kFixture, z, z);
        CHECK((g.m - fd).max_abs() < 1e-6 * std::max(1.0, g.m.max_abs()));
    }
}

TEST_CASE("analytic metric derivatives match Wirtinger finite differences") {
    Rng rng(29);
    MatrixField field = [&](const Point& p) { return metric_at(kFixture, p).m; };
    for (int t = 0; t < 4; ++t) {
        const Point z = random_point(rng, 2, 1.2);
        for (int k = 0; k < 2; ++k) {
            const auto analytic = metric_z_derivative(kFixture, z, k);
            const auto fd = fd_wirtinger_z(field, z, k);
            CHECK((analytic - fd).max_abs() < 1e-6 * std::max(1.0, analytic.max_abs()));
            MatrixField dk_field = [&, k](const Point& p) {
                return metric_z_derivative(kFixture, p, k);
            };
            for (int l = 0; l < 2; ++l) {
                const auto second = metric_mixed_second(kFixture, z, k, l);
                const auto fd2 = fd_wirtinger_zbar(dk_field, z, l);
                CHECK((second - fd2).max_abs() < 1e-6 * std::max(1.0, second.max_abs()));
            }
        }
    }
}

TEST_CASE("t_matrix coincides with the metric on the diagonal") {
    Rng rng(31);
    for (int t = 0; t < 8; ++t) {
        const Point z = random_point(rng, 2, 2.0);
        const auto tm = t_matrix(kFixture, z, z);
        const auto g = metric_at(kFixture, z);
        CHECK((tm - g.m).max_abs() < 1e-14 * std::max(1.0, g.m.max_abs()));
    }
}

TEST_CASE("t_matrix at w = 0 is the constant diag(c_k / c_0)") {
    Rng rng(37);
    const Point zero(2, Complex{});
    const auto t0 = t_matrix(kFixture, zero, zero);
    for (int t = 0; t < 8; ++t) {
        const Point z = random_point(rng, 2, 4.0);
        const auto tz = t_matrix(kFixture, z, zero);
        CHECK((tz - t0).max_abs() == 0.0);  // both reduce to the same formula exactly
        CHECK(std::abs(tz(0, 0) - Complex(0.9 / 1.7)) < 1e-15);
        CHECK(std::abs(tz(1, 1) - Complex(2.3 / 1.7)) < 1e-15);
    }
}

TEST_CASE("t_matrix matches finite differences off the diagonal") {
    Rng rng(41);
    for (int t = 0; t < 5; ++t) {
        const Point z = random_point(rng, 2, 1.0);
        Point w = z;
        for (auto& wk : w) wk += Complex(0.05 * (2.0 * rng.u01() - 1.0),
                                         0.05 * (2.0 * rng.u01() - 1.0));
        const auto tm = t_matrix(kFixture, z, w);
        const auto fd = fd_log_kernel_hessian(kFixture, z, w);
        CHECK((tm - fd).max_abs() < 1e-6 * std::max(1.0, tm.max_abs()));
    }
}

TEST_CASE("t_matrix rejects a vanishing kernel pair") {
    // c_0 + c_1 z_1 conj(w_1) = 0 at z_1 = 1, w_1 = -c_0/c_1.
    const KernelForm k1 = KernelForm::make(1, {1.0, 1.0});
    const Point z{Complex(1.0, 0.0)};
    const Point w{Complex(-1.0, 0.0)};
    CHECK_THROWS_AS(t_matrix(k1, z, w), ZeroKernel);
}

TEST_CASE("Fubini-Study fixture has curvature exactly 2") {
    Rng rng(43);
    for (int t = 0; t < 12; ++t) {
        const Point z = random_point(rng, 3, 2.5);
        const Point X = random_point(rng, 3, 1.0);
        const double h = sectional_curvature(kFs3, z, X);
        CHECK(h == doctest::Approx(2.0).epsilon(1e-11));
        CHECK(fs_reference_curvature(3, z, X) == doctest::Approx(2.0).epsilon(1e-12));
    }
    // General positive coefficients are an FS rescaling: still exactly 2.
    Rng rng2(47);
    for (int t = 0; t < 8; ++t) {
        const Point z = random_point(rng2, 2, 2.0);
        const Point X = random_point(rng2, 2, 1.0);
        CHECK(sectional_curvature(kFixture, z, X) == doctest::Approx(2.0).epsilon(1e-11));
    }
}

TEST_CASE("unit-disk fixture has curvature -1 under the same convention") {
    // Bergman kernel of the disk: K = 1/(pi (1-|z|^2)^2), metric 2/(1-|z|^2)^2.
    MatrixField disk_metric = [](const Point& z) {
        CMatrix g(1);
        const double r2 = std::norm(z[0]);
        g(0, 0) = 2.0 / ((1.0 - r2) * (1.0 - r2));
        return g;
    };
    const Point zero(1, Complex{});
    const Point X{Complex(1.0, 0.0)};
    CHECK(fd_sectional_curvature(disk_metric, zero, X) == doctest::Approx(-1.0).epsilon(1e-6));

    Rng rng(53);
    for (int t = 0; t < 4; ++t) {
        const Point z{Complex(0.4 * (2.0 * rng.u01() - 1.0), 0.4 * (2.0 * rng.u01() - 1.0))};
        CHECK(fd_sectional_curvature(disk_metric, z, X) == doctest::Approx(-1.0).epsilon(1e-5));
    }
}

TEST_CASE("degenerate directions are rejected") {
    const Point zero(2, Complex{});
    const Point tiny(2, Complex(1e-200, 0.0));
    CHECK_THROWS_AS(sectional_curvature(kFixture, zero, Point(2, Complex{})),
                    DegenerateDirection);
    CHECK_THROWS_AS(sectional_curvature(kFixture, zero, tiny), DegenerateDirection);
}

TEST_CASE("rescaling to Fubini-Study") {
    const auto identity = rescale_to_fubini_study(KernelForm::make(2, {1.0, 1.0, 1.0}));
    CHECK(std::abs(identity.matrix(0, 0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(identity.matrix(1, 1) - Complex(1.0)) < 1e-15);

    const auto map = rescale_to_fubini_study(kFixture);
    CHECK(std::abs(map.matrix(0, 0) - Complex(std::sqrt(0.9 / 1.7))) < 1e-15);
    CHECK(std::abs(map.matrix(1, 1) - Complex(std::sqrt(2.3 / 1.7))) < 1e-15);

    // Chain rule: g(z) = A^H g_FS(A z) A entrywise.
    const KernelForm fs2 = KernelForm::make(2, {1.0, 1.0, 1.0});
    Rng rng(59);
    for (int t = 0; t < 6; ++t) {
        const Point z = random_point(rng, 2, 2.0);
        const Point w = map.apply(z);
        const CMatrix lhs = metric_at(kFixture, z).m;
        const CMatrix rhs = map.matrix.adjoint() * metric_at(fs2, w).m * map.matrix;
        CHECK((lhs - rhs).max_abs() < 1e-12 * std::max(1.0, lhs.max_abs()));
    }
}

TEST_CASE("b_function closed forms") {
    const Point zero(2, Complex{});
    const double b0 = b_function(kFixture, zero);
    CHECK(b0 == doctest::Approx(0.9 * 2.3 / std::pow(1.7, 3)).epsilon(1e-13));

    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        const Point z = random_point(rng, 2, 3.0);
        const double direct = b_function(kFixture, z);
        const double closed = b_function_closed_form(kFixture, z);
        CHECK(std::fabs(direct - closed) / closed < 1e-10);
        double mod = 0.0;
        for (const auto& zk : z) mod += std::norm(zk);
        if (mod > 0.0) CHECK(direct < b0);
    }
}

TEST_CASE("transformation laws hold for automorphism generators") {
    Rng rng(67);
    std::vector<Point> samples;
    for (int t = 0; t < 16; ++t) samples.push_back(random_point(rng, 3, 2.0));

    // Phase rotations preserve any kernel of this shape.
    const KernelForm k3 = KernelForm::make(3, {1.3, 0.8, 0.8, 2.1});
    for (int t = 0; t < 5; ++t) {
        std::vector<Complex> phases(3);
        for (auto& ph : phases) ph = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
        const auto report = check_transformation_law(k3, LinearMap::diagonal(phases), samples);
        CHECK(report.max_deviation() < 1e-12);
        CHECK(report.pairs_checked == 16);
    }

    // Swapping coordinates 1,2 is admissible because c_1 = c_2.
    const auto swap12 = LinearMap::coordinate_permutation({1, 0, 2});
    CHECK(check_transformation_law(k3, swap12, samples).max_deviation() < 1e-12);

    // Scaling by 2 is not an automorphism: the kernel law must break loudly.
    const auto doubling = LinearMap::scaling(3, 2.0);
    const auto bad = check_transformation_law(k3, doubling, samples);
    CHECK(bad.max_kernel_dev > 0.5);
}

TEST_CASE("cartan conditions") {
    Rng rng(71);
    std::vector<Point> samples;
    for (int t = 0; t < 30; ++t) samples.push_back(random_point(rng, 2, 5.0));
    const auto report = cartan_conditions(kFixture, samples);
    CHECK(report.samples_checked == 30);
    CHECK(report.max_kernel_dev < 1e-13);
    CHECK(report.max_t_dev < 1e-13);
    CHECK(report.min_eigenvalue == doctest::Approx(0.9 / 1.7).epsilon(1e-12));
    CHECK(report.passed());

    const auto empty = cartan_conditions(kFixture, {});
    CHECK(empty.samples_checked == 0);
    CHECK(empty.passed());
}

TEST_CASE("hermitian linear algebra utilities") {
    CMatrix m(2);
    m(0, 0) = 2.0;
    m(1, 1) = 3.0;
    m(0, 1) = Complex(0.5, 0.25);
    m(1, 0) = std::conj(m(0, 1));
    const auto eigs = hermitian_eigenvalues(m);
    REQUIRE(eigs.size() == 2);
    // trace and det preserved
    CHECK(eigs[0] + eigs[1] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(eigs[0] * eigs[1] == doctest::Approx(det(m).real()).epsilon(1e-12));

    const auto inv = inverse(m);
    CHECK(((m * inv) - CMatrix::identity(2)).max_abs() < 1e-14);

    CMatrix big(4);
    Rng rng(73);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            big(i, j) = Complex(rng.u01() - 0.5, rng.u01() - 0.5);
        }
        big(i, i) += 4.0;
    }
    const auto binv = inverse(big);
    CHECK(((big * binv) - CMatrix::identity(4)).max_abs() < 1e-12);
    // det via LU against cofactor expansion of the transpose-free minors.
    const Complex d = det(big);
    CHECK(std::abs(det(binv) * d - Complex(1.0)) < 1e-12);

    CMatrix skew(2);
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    CHECK_THROWS_AS(HermitianForm::from_matrix(skew), std::invalid_argument);
}
