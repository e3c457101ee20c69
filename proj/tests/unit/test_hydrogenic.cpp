#include <doctest.h>

#include <cmath>
#include <vector>

#include "relspin/hydrogenic.hpp"

using namespace relspin;
using namespace relspin::hydrogenic;
namespace c = relspin::constants;

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(c::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Radial quadrature int_0^inf f(r) dr on a log-mapped Gauss-Legendre grid.
double radial_integral(const std::function<double(double)>& f, double r_lo, double r_hi,
                       int n = 200) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    const double a = std::log(r_lo), b = std::log(r_hi);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = 0.5 * (b - a) * x[i] + 0.5 * (a + b);
        const double r = std::exp(u);
        acc += w[i] * f(r) * r; // dr = r du
    }
    return acc * 0.5 * (b - a);
}

// Full 3D quadrature of a density-like functional of the spinor.
double spherical_integral(const HydrogenicState& state,
                          const std::function<double(const Spinor4&)>& f, int nr = 160,
                          int nt = 64, int nphi = 16) {
    std::vector<double> xt, wt;
    gauss_legendre(nt, xt, wt);
    const int Z = state.Z();
    double total = 0.0;
    for (int it = 0; it < nt; ++it) {
        const double ct = xt[it];
        const double st = std::sqrt(1.0 - ct * ct);
        for (int ip = 0; ip < nphi; ++ip) {
            const double phi = 2.0 * c::pi * ip / nphi;
            const auto radial = [&](double r) {
                const Vec3 pos{r * st * std::cos(phi), r * st * std::sin(phi), r * ct};
                return f(state.eval(pos)) * r * r;
            };
            total += wt[it] * (2.0 * c::pi / nphi) *
                     radial_integral(radial, 1e-8 / Z, 60.0 / Z);
        }
    }
    return total;
}

} // namespace

TEST_CASE("gamma factor") {
    CHECK(gamma_factor(1) == doctest::Approx(std::sqrt(1.0 - c::alpha_fs * c::alpha_fs))
                                 .epsilon(1e-15));
    // Z = 92 evaluates to about 0.7411 with the CODATA alpha
    CHECK(gamma_factor(92) == doctest::Approx(0.74113).epsilon(3e-4));
    // Z alpha crosses 1 between Z = 137 and Z = 138 for CODATA alpha
    CHECK_NOTHROW((void)gamma_factor(137));
    CHECK_THROWS_AS((void)gamma_factor(138), SupercriticalZ);
    CHECK_THROWS_AS((void)gamma_factor(0), SupercriticalZ);
}

TEST_CASE("ground state energy") {
    SUBCASE("hydrogen binding energy is Z^2/2 plus fine-structure shift") {
        const EnergyLevel e = eigen_energy(1, 0.5, 1);
        const double binding = c::rest_energy - e.energy;
        CHECK(binding == doctest::Approx(c::rest_energy *
                                         (1.0 - std::sqrt(1.0 - c::alpha_fs * c::alpha_fs)))
                             .epsilon(1e-12));
        CHECK(binding == doctest::Approx(0.5).epsilon(1e-4));
    }
    SUBCASE("n = 1 energy is exactly m c^2 gamma") {
        for (int Z : {1, 20, 60, 92, 120}) {
            CHECK(eigen_energy(1, 0.5, Z).energy ==
                  doctest::Approx(c::rest_energy * gamma_factor(Z)).epsilon(1e-13));
        }
    }
    SUBCASE("fine-structure splitting at Z = 92") {
        const double e_half = eigen_energy(2, 0.5, 92).energy;
        const double e_three_half = eigen_energy(2, 1.5, 92).energy;
        CHECK(e_three_half > e_half);
    }
    SUBCASE("energy decreases with Z at fixed (n, j)") {
        CHECK(eigen_energy(1, 0.5, 92).energy < eigen_energy(1, 0.5, 1).energy);
    }
    SUBCASE("invalid quantum numbers") {
        CHECK_THROWS((void)eigen_energy(1, 1.5, 1));
        CHECK_THROWS((void)eigen_energy(0, 0.5, 1));
    }
}

TEST_CASE("ground state spinor") {
    SUBCASE("density is spherically symmetric") {
        const HydrogenicState state = ground_state(92, +1);
        const double r = 0.01;
        const double ref = state.eval(Vec3{0.0, 0.0, r}).squaredNorm();
        for (Vec3 dir : {Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0},
                         Vec3{1.0, 1.0, -1.0}, Vec3{-0.6, 0.8, 0.0}}) {
            dir.normalize();
            const double val = state.eval(r * dir).squaredNorm();
            CHECK(val == doctest::Approx(ref).epsilon(1e-10));
        }
    }
    SUBCASE("lower component weight vanishes in the nonrelativistic limit") {
        CHECK(ground_state(1, +1).lower_coefficient() < 4e-3);
        CHECK(ground_state(92, +1).lower_coefficient() > 0.3);
    }
    SUBCASE("quadrature norm is 1 for light and heavy ions") {
        for (int Z : {1, 40, 92}) {
            const HydrogenicState state = ground_state(Z, +1);
            const double norm = spherical_integral(
                state, [](const Spinor4& v) { return v.squaredNorm(); });
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("analytic spin expectation oracle") {
    SUBCASE("limits") {
        CHECK(analytic_pauli_spin_z(1) == doctest::Approx(0.5).epsilon(1e-4));
        CHECK(analytic_pauli_spin_z(92) < 0.5);
    }
    SUBCASE("agrees with direct quadrature of <Sigma_3/2>") {
        for (int Z : {20, 60, 92}) {
            const HydrogenicState state = ground_state(Z, +1);
            const double quad = spherical_integral(state, [](const Spinor4& v) {
                return 0.5 * (std::norm(v[0]) - std::norm(v[1]) + std::norm(v[2]) -
                              std::norm(v[3]));
            });
            CHECK(quad == doctest::Approx(analytic_pauli_spin_z(Z)).epsilon(1e-8));
        }
    }
    SUBCASE("m = -1/2 state gives the opposite sign") {
        const HydrogenicState minus = ground_state(92, -1);
        const double quad = spherical_integral(minus, [](const Spinor4& v) {
            return 0.5 * (std::norm(v[0]) - std::norm(v[1]) + std::norm(v[2]) -
                          std::norm(v[3]));
        });
        CHECK(quad == doctest::Approx(-analytic_pauli_spin_z(92)).epsilon(1e-8));
    }
}

TEST_CASE("analytic position variance oracle") {
    SUBCASE("approaches 1/Z^2 in the nonrelativistic limit") {
        CHECK(analytic_position_variance_pauli(1) == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("relativistic ground states shrink faster than 1/Z^2") {
        const double z92 = analytic_position_variance_pauli(92);
        CHECK(z92 < 1.0 / (92.0 * 92.0));
    }
    SUBCASE("agrees with the radial quadrature of <r^2>/3") {
        // <r^2> via the radial integral of the (spherically symmetric) density
        for (int Z : {1, 40, 80}) {
            const HydrogenicState state = ground_state(Z, +1);
            const auto dens = [&](double r) {
                return state.eval(Vec3{0.0, 0.0, r}).squaredNorm() * 4.0 * c::pi * r * r;
            };
            const double r2 = radial_integral([&](double r) { return dens(r) * r * r; },
                                              1e-9 / Z, 80.0 / Z, 300);
            CHECK(r2 / 3.0 ==
                  doctest::Approx(analytic_position_variance_pauli(Z)).epsilon(1e-7));
        }
    }
}
