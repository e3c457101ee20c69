#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "relspin/algebra.hpp"
#include "test_helpers.hpp"

using namespace relspin;
using namespace relspin::algebra;
namespace c = relspin::constants;

TEST_CASE("dirac matrices obey the anticommutation algebra") {
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            const Matrix4c ac = anticommutator(alpha(i), alpha(k));
            const Matrix4c expected = (i == k) ? Matrix4c(2.0 * Matrix4c::Identity())
                                               : Matrix4c(Matrix4c::Zero());
            CHECK(test::max_abs_diff(ac, expected) == 0.0);
        }
        CHECK(test::max_abs_diff(anticommutator(alpha(i), beta()), Matrix4c::Zero()) == 0.0);
    }
    CHECK(test::max_abs_diff(beta() * beta(), Matrix4c::Identity()) == 0.0);
    CHECK(test::max_abs_diff(alpha(0) * alpha(1) + alpha(1) * alpha(0), Matrix4c::Zero()) ==
          0.0);
}

TEST_CASE("Sigma_3 is diag(1,-1,1,-1)") {
    Matrix4c expected = Matrix4c::Zero();
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    expected(2, 2) = 1.0;
    expected(3, 3) = -1.0;
    CHECK(test::max_abs_diff(Sigma(2), expected) == 0.0);
}

TEST_CASE("h0 kernel at rest reduces to m c^2 beta") {
    const Matrix4c h = h0_kernel(Vec3::Zero());
    CHECK(test::max_abs_diff(h, Matrix4c(c::rest_energy * beta())) == 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    CHECK(es.eigenvalues()[0] == doctest::Approx(-c::rest_energy).epsilon(1e-14));
    CHECK(es.eigenvalues()[3] == doctest::Approx(c::rest_energy).epsilon(1e-14));
}

TEST_CASE("h0 kernel spectrum at p = (1,0,0)") {
    const Matrix4c h = h0_kernel(Vec3{1.0, 0.0, 0.0});
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    const double e = c::c_au * std::sqrt(c::c_au * c::c_au + 1.0);
    CHECK(es.eigenvalues()[0] == doctest::Approx(-e).epsilon(1e-13));
    CHECK(es.eigenvalues()[1] == doctest::Approx(-e).epsilon(1e-13));
    CHECK(es.eigenvalues()[2] == doctest::Approx(e).epsilon(1e-13));
    CHECK(es.eigenvalues()[3] == doctest::Approx(e).epsilon(1e-13));
}

TEST_CASE("h0 squared is the scalar c^2 (m^2 c^2 + p^2)") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec3 p = test::random_momentum(rng, 1e-2, 1e4);
        const Matrix4c h = h0_kernel(p);
        const double e2 = c::c_au * c::c_au * (c::c_au * c::c_au + p.squaredNorm());
        CHECK(test::max_abs_diff(h * h, Matrix4c(e2 * Matrix4c::Identity())) < 1e-13 * e2);
    }
}

TEST_CASE("h0 kernel is Hermitian for 100 random momenta") {
    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Vec3 p = test::random_momentum(rng, 1e-3 * c::c_au, 1e3 * c::c_au);
        worst = std::max(worst, hermiticity_defect(h0_kernel(p)) / (c::c_au * p.norm()));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("p0 values") {
    CHECK(p0_value(Vec3::Zero()) == doctest::Approx(c::c_au).epsilon(1e-15));
    CHECK(p0_value(Vec3{3.0, 4.0, 0.0}) ==
          doctest::Approx(std::sqrt(c::c_au * c::c_au + 25.0)).epsilon(1e-15));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial)
        CHECK(p0_value(test::random_momentum(rng, 1e-6, 1e5)) >= c::c_au);
}

TEST_CASE("FW basis states occupy the labelled slots") {
    const Vec3 p{0.3, -0.2, 1.1};
    using ES = EnergySign;
    using SP = SpinProjection;
    CHECK(fw_basis_state({ES::Positive, p, SP::Up}).amplitude[0] == Complex(1.0, 0.0));
    CHECK(fw_basis_state({ES::Negative, p, SP::Down}).amplitude[3] == Complex(1.0, 0.0));
    // phase factor e^{i p.r}
    const Vec3 r{0.5, 0.25, -1.0};
    const Spinor4 v = fw_basis_state({ES::Positive, p, SP::Up}).eval(r);
    CHECK(std::abs(v[0] - std::exp(Complex(0.0, p.dot(r)))) < 1e-15);

    // distinct labels at the same momentum are orthonormal
    const PlaneWaveLabel labels[4] = {{ES::Positive, p, SP::Up},
                                      {ES::Positive, p, SP::Down},
                                      {ES::Negative, p, SP::Up},
                                      {ES::Negative, p, SP::Down}};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Complex ip =
                fw_basis_state(labels[a]).amplitude.dot(fw_basis_state(labels[b]).amplitude);
            CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-15);
        }
}

TEST_CASE("standard representation eigenstates diagonalize h0") {
    std::mt19937_64 rng(23);
    using ES = EnergySign;
    using SP = SpinProjection;
    SUBCASE("p = 0 spin-up positive state is the first unit vector") {
        const Spinor4 v = standard_rep_eigenstate({ES::Positive, Vec3::Zero(), SP::Up}).amplitude;
        CHECK(std::abs(v[0] - 1.0) < 1e-15);
        CHECK(std::abs(v[1]) + std::abs(v[2]) + std::abs(v[3]) < 1e-15);
    }
    SUBCASE("eigenstate residuals and norms") {
        for (int trial = 0; trial < 50; ++trial) {
            const Vec3 p = test::random_momentum(rng, 1e-2, 1e3);
            const Matrix4c h = h0_kernel(p);
            const double e = c::c_au * p0_value(p);
            for (const auto energy : {ES::Positive, ES::Negative})
                for (const auto spin : {SP::Up, SP::Down}) {
                    const Spinor4 u = standard_rep_eigenstate({energy, p, spin}).amplitude;
                    const double sign = energy == ES::Positive ? 1.0 : -1.0;
                    CHECK((h * u - sign * e * u).norm() / e < 1e-12);
                    CHECK(std::abs(u.norm() - 1.0) < 1e-13);
                }
        }
    }
    SUBCASE("the four spinors at fixed p form an orthonormal set") {
        const Vec3 p = test::random_momentum(rng, 0.5 * c::c_au, 2.0 * c::c_au);
        Matrix4c gram;
        const PlaneWaveLabel labels[4] = {{ES::Positive, p, SP::Up},
                                          {ES::Positive, p, SP::Down},
                                          {ES::Negative, p, SP::Up},
                                          {ES::Negative, p, SP::Down}};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                gram(a, b) = standard_rep_eigenstate(labels[a])
                                 .amplitude.dot(standard_rep_eigenstate(labels[b]).amplitude);
        CHECK(test::max_abs_diff(gram, Matrix4c::Identity()) < 1e-12);
    }
}
