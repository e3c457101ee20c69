#include <doctest.h>

#include <random>

#include "relspin/grid.hpp"
#include "test_helpers.hpp"

using namespace relspin;
using namespace relspin::grid;
using spin_ops::SpinOperatorKind;
namespace c = relspin::constants;

namespace {

SpinorField random_field(const GridSpec& spec, int ncomp, std::uint64_t seed) {
    SpinorField f(spec, ncomp);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t i = 0; i < f.points(); ++i)
        for (int comp = 0; comp < ncomp; ++comp) f.at(i, comp) = Complex(g(rng), g(rng));
    f.normalize();
    return f;
}

// random positive-energy wavepacket localized well inside the box
SpinorField gaussian_packet(const GridSpec& spec, std::uint64_t seed, bool positive_energy) {
    SpinorField f(spec, 4);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double sigma = spec.box[0] / 14.0;
    struct Wave {
        Vec3 k;
        Spinor4 amp;
    };
    std::vector<Wave> waves;
    for (int w = 0; w < 4; ++w) {
        const Vec3 k{2.0 * u(rng), 2.0 * u(rng), 2.0 * u(rng)};
        Spinor4 a;
        if (positive_energy) {
            const Matrix4c t = spin_ops::fw_transform(k);
            a = t.col(0) * Complex(u(rng), u(rng)) + t.col(1) * Complex(u(rng), u(rng));
        } else {
            for (int i = 0; i < 4; ++i) a[i] = Complex(u(rng), u(rng));
        }
        waves.push_back({k, a});
    }
    for (std::size_t i = 0; i < f.points(); ++i) {
        const int n2 = spec.n[2], n1 = spec.n[1];
        const int iz = int(i % n2), iy = int((i / n2) % n1),
                  ix = int(i / (std::size_t(n1) * n2));
        const Vec3 r{spec.coord(0, ix), spec.coord(1, iy), spec.coord(2, iz)};
        const double env = std::exp(-r.squaredNorm() / (2.0 * sigma * sigma));
        Spinor4 v = Spinor4::Zero();
        for (const auto& w : waves) v += w.amp * std::exp(Complex(0.0, w.k.dot(r)));
        for (int comp = 0; comp < 4; ++comp) f.at(i, comp) = env * v[comp];
    }
    f.normalize();
    return f;
}

} // namespace

TEST_CASE("Parseval: momentum-space norm equals position-space norm") {
    const GridSpec spec = GridSpec::cubic(32, 8.0);
    SpinorField f = random_field(spec, 4, 101);
    const double norm_x = f.norm2();
    SpinorField hat = f;
    fft_forward(hat);
    const Complex d = par::dot(hat.data(), hat.data(), hat.points() * 4);
    const double norm_p = d.real() * spec.cell_volume() / double(spec.total());
    CHECK(norm_p == doctest::Approx(norm_x).epsilon(1e-12));
}

TEST_CASE("identity kernel leaves fields unchanged") {
    const GridSpec spec = GridSpec::cubic(16, 4.0);
    const SpinorField f = random_field(spec, 4, 7);
    const SpinorField g = apply_momentum_kernel(f, [](const Vec3&) {
        return Matrix4c(Matrix4c::Identity());
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < f.points(); ++i)
        for (int comp = 0; comp < 4; ++comp)
            worst = std::max(worst, std::abs(f.at(i, comp) - g.at(i, comp)));
    CHECK(worst < 1e-13);
}

TEST_CASE("linearity of the spectral kernel application") {
    const GridSpec spec = GridSpec::cubic(16, 4.0);
    const SpinorField f = random_field(spec, 4, 11);
    const SpinorField g = random_field(spec, 4, 13);
    const Kernel4 kernel = [](const Vec3& p) { return spin_ops::fw_transform(p); };
    const Complex a(0.7, -0.3), b(-1.1, 0.4);

    SpinorField combo(spec, 4);
    for (std::size_t i = 0; i < combo.points(); ++i)
        for (int comp = 0; comp < 4; ++comp)
            combo.at(i, comp) = a * f.at(i, comp) + b * g.at(i, comp);

    const SpinorField lhs = apply_momentum_kernel(combo, kernel);
    const SpinorField fa = apply_momentum_kernel(f, kernel);
    const SpinorField gb = apply_momentum_kernel(g, kernel);
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.points(); ++i)
        for (int comp = 0; comp < 4; ++comp)
            worst = std::max(worst, std::abs(lhs.at(i, comp) - a * fa.at(i, comp) -
                                             b * gb.at(i, comp)));
    CHECK(worst < 1e-12);
}

TEST_CASE("plane-wave eigenstate is scaled by its energy under the h0 kernel") {
    const GridSpec spec = GridSpec::cubic(16, 4.0);
    // grid-periodic momentum (lattice mode)
    const Vec3 p{2.0 * c::pi / 4.0 * 1, 2.0 * c::pi / 4.0 * 2, -2.0 * c::pi / 4.0 * 1};
    const auto wave = algebra::standard_rep_eigenstate(
        {algebra::EnergySign::Positive, p, algebra::SpinProjection::Up});
    SpinorField f(spec, 4);
    for (std::size_t i = 0; i < f.points(); ++i) {
        const int n2 = spec.n[2], n1 = spec.n[1];
        const int iz = int(i % n2), iy = int((i / n2) % n1),
                  ix = int(i / (std::size_t(n1) * n2));
        const Vec3 r{spec.coord(0, ix), spec.coord(1, iy), spec.coord(2, iz)};
        const Spinor4 v = wave.eval(r);
        for (int comp = 0; comp < 4; ++comp) f.at(i, comp) = v[comp];
    }
    f.normalize();
    const SpinorField hf = apply_momentum_kernel(f, [](const Vec3& q) {
        return algebra::h0_kernel(q);
    });
    const double e = c::c_au * algebra::p0_value(p);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.points(); ++i)
        for (int comp = 0; comp < 4; ++comp)
            worst = std::max(worst, std::abs(hf.at(i, comp) - e * f.at(i, comp)));
    CHECK(worst / e < 1e-10);
}

TEST_CASE("transform round trip T_FW then its adjoint is the identity") {
    const GridSpec spec = GridSpec::cubic(16, 4.0);
    const SpinorField f = random_field(spec, 4, 17);
    SpinorField g = apply_momentum_kernel(f, [](const Vec3& p) {
        return spin_ops::fw_transform(p);
    });
    g = apply_momentum_kernel(g, [](const Vec3& p) {
        return Matrix4c(spin_ops::fw_transform(p).adjoint());
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < f.points(); ++i)
        for (int comp = 0; comp < 4; ++comp)
            worst = std::max(worst, std::abs(f.at(i, comp) - g.at(i, comp)));
    CHECK(worst < 1e-12);
}

TEST_CASE("expectation guards and basic values") {
    const GridSpec spec = GridSpec::cubic(16, 4.0);
    SpinorField f = random_field(spec, 4, 23);
    SUBCASE("identity expectation on a normalized field is 1") {
        const Complex v = expectation_momentum(f, [](const Vec3&) {
            return Matrix4c(Matrix4c::Identity());
        });
        CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(v.imag()) < 1e-12);
    }
    SUBCASE("NotNormalized fires") {
        f.scale(Complex(2.0, 0.0));
        CHECK_THROWS_AS((void)expectation_momentum(f, [](const Vec3&) {
            return Matrix4c(Matrix4c::Identity());
        }), NotNormalized);
    }
    SUBCASE("Hermitian kernels give real expectations") {
        const Complex v = expectation_momentum(f, [](const Vec3& p) {
            return spin_ops::spin_kernel_grid(SpinOperatorKind::FoldyWouthuysen, 2, p);
        });
        CHECK(std::abs(v.imag()) < 1e-10);
    }
    SUBCASE("singular kernel surfaces as the typed zero-mode error") {
        CHECK_THROWS_AS((void)expectation_momentum(f, [](const Vec3& p) {
            return spin_ops::spin_kernel(SpinOperatorKind::Pryce, 2, p);
        }), KernelSingularAtZeroMode);
    }
}

TEST_CASE("hydrogenic sampling") {
    SUBCASE("norm defect small and shrinking with resolution (scale-invariant rule)") {
        const hydrogenic::HydrogenicState state = hydrogenic::ground_state(20, +1);
        const double box = 16.0 / 20;
        SampleInfo info64, info128;
        (void)sample_state(state, GridSpec::cubic(64, box), &info64);
        (void)sample_state(state, GridSpec::cubic(128, box), &info128);
        CHECK(info64.norm_defect < 2e-3);
        CHECK(info128.norm_defect < info64.norm_defect);

        // same defect bound for a different Z with the scaled box
        const hydrogenic::HydrogenicState heavy = hydrogenic::ground_state(80, +1);
        SampleInfo info80;
        (void)sample_state(heavy, GridSpec::cubic(64, 16.0 / 80), &info80);
        CHECK(info80.norm_defect < 4e-3);
    }
    SUBCASE("BoxTooSmall fires when the tail is clipped") {
        const hydrogenic::HydrogenicState state = hydrogenic::ground_state(1, +1);
        CHECK_THROWS_AS((void)sample_state(state, GridSpec::cubic(32, 5.0), nullptr),
                        BoxTooSmall);
    }
}

TEST_CASE("grid spin expectations against the analytic oracle") {
    const int Z = 20;
    const hydrogenic::HydrogenicState state = hydrogenic::ground_state(Z, +1);
    const GridSpec spec = GridSpec::cubic(64, 16.0 / Z);
    const SpinorField f = sample_state(state, spec, nullptr);

    SUBCASE("Pauli z spin matches the closed form") {
        const double s = spin_expectation(f, SpinOperatorKind::Pauli, 2);
        CHECK(s == doctest::Approx(hydrogenic::analytic_pauli_spin_z(Z)).epsilon(2e-4));
    }
    SUBCASE("Pryce z spin is 1/2") {
        bool substituted = false;
        const double s = spin_expectation(f, SpinOperatorKind::Pryce, 2, &substituted);
        CHECK(substituted);
        CHECK(s == doctest::Approx(0.5).epsilon(5e-3));
    }
}

TEST_CASE("position variance") {
    const int Z = 40;
    const hydrogenic::HydrogenicState state = hydrogenic::ground_state(Z, +1);
    const GridSpec spec = GridSpec::cubic(64, 16.0 / Z);
    const SpinorField f = sample_state(state, spec, nullptr);

    SUBCASE("Pauli variance matches the closed form, first moment vanishes") {
        const PositionVariance v = variance_of_position(f, SpinOperatorKind::Pauli, 2);
        CHECK(v.variance ==
              doctest::Approx(hydrogenic::analytic_position_variance_pauli(Z)).epsilon(5e-3));
        CHECK(std::abs(v.first_moment) < 1e-6);
    }
    SUBCASE("first moments vanish for all three kinds") {
        for (const auto kind : {SpinOperatorKind::Pauli, SpinOperatorKind::FoldyWouthuysen,
                                SpinOperatorKind::Pryce}) {
            const PositionVariance v = variance_of_position(f, kind, 2);
            CHECK(std::abs(v.first_moment) < 1e-6);
        }
    }
}

TEST_CASE("position-operator kinds separate at high Z") {
    const int Z = 92;
    const hydrogenic::HydrogenicState state = hydrogenic::ground_state(Z, +1);
    const GridSpec spec = GridSpec::cubic(64, 16.0 / Z);
    const SpinorField f = sample_state(state, spec, nullptr);
    const double vp = variance_of_position(f, SpinOperatorKind::Pauli, 2).variance;
    const double vf = variance_of_position(f, SpinOperatorKind::FoldyWouthuysen, 2).variance;
    const double vr = variance_of_position(f, SpinOperatorKind::Pryce, 2).variance;
    CHECK(std::abs(vf - vp) / vp > 0.01);
    CHECK(std::abs(vr - vp) / vp > 0.01);
    CHECK(std::abs(vf - vr) / vf > 0.01);
}

TEST_CASE("explicit FW mean-position form agrees with the unitary sandwich") {
    const GridSpec spec = GridSpec::cubic(64, 12.0);
    const SpinorField f = gaussian_packet(spec, 71, false);
    const int comp = 2;

    const SpinorField sandwich = apply_position_operator(f, SpinOperatorKind::FoldyWouthuysen, comp);

    SpinorField direct = multiply_coordinate(f, comp);
    const SpinorField corr = apply_momentum_kernel(f, [comp](const Vec3& p) {
        return spin_ops::fw_position_correction(comp, p);
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < f.points(); ++i)
        for (int cdx = 0; cdx < 4; ++cdx)
            worst = std::max(worst, std::abs(sandwich.at(i, cdx) - direct.at(i, cdx) -
                                             corr.at(i, cdx)));
    CHECK(worst < 1e-10);
}

TEST_CASE("FW position expectation equals plain position on the FW-representation state") {
    const GridSpec spec = GridSpec::cubic(64, 12.0);
    const SpinorField f = gaussian_packet(spec, 73, true);
    const SpinorField moved = apply_position_operator(f, SpinOperatorKind::FoldyWouthuysen, 2);
    const Complex lhs = inner_product(f, moved);

    const SpinorField fw_rep = apply_momentum_kernel(f, [](const Vec3& p) {
        return Matrix4c(spin_ops::fw_transform(p).adjoint());
    });
    const Complex rhs = expectation_position(fw_rep, [](const Vec3& r) { return r.z(); });
    CHECK(lhs.real() == doctest::Approx(rhs.real()).epsilon(1e-9));
    CHECK(std::abs(lhs.imag()) < 1e-9);
}

TEST_CASE("spin-orbit operator and J3 on the sampled ground state") {
    const int Z = 40;
    const hydrogenic::HydrogenicState state = hydrogenic::ground_state(Z, +1);
    const GridSpec spec = GridSpec::cubic(64, 16.0 / Z);
    const SpinorField f = sample_state(state, spec, nullptr);

    // L_i psi via spectral momenta and coordinate products
    auto grad_comp = [&](const SpinorField& field, int axis) {
        return apply_scalar_momentum_kernel(field, [axis](const Vec3& p) {
            return Complex(p[axis], 0.0);
        });
    };
    const SpinorField px = grad_comp(f, 0), py = grad_comp(f, 1), pz = grad_comp(f, 2);
    auto coord_times = [&](const SpinorField& field, int axis) {
        return multiply_coordinate(field, axis);
    };
    // (r x p)_i combinations
    const SpinorField lx_a = coord_times(pz, 1), lx_b = coord_times(py, 2);
    const SpinorField ly_a = coord_times(px, 2), ly_b = coord_times(pz, 0);
    const SpinorField lz_a = coord_times(py, 0), lz_b = coord_times(px, 1);

    SpinorField kpsi(spec, 4);
    using namespace relspin::algebra;
    for (std::size_t i = 0; i < f.points(); ++i) {
        Spinor4 l[3];
        for (int comp = 0; comp < 4; ++comp) {
            l[0][comp] = lx_a.at(i, comp) - lx_b.at(i, comp);
            l[1][comp] = ly_a.at(i, comp) - ly_b.at(i, comp);
            l[2][comp] = lz_a.at(i, comp) - lz_b.at(i, comp);
        }
        Eigen::Map<const Spinor4> v(f.data() + i * 4);
        Spinor4 acc = v; // the +1 term
        for (int ax = 0; ax < 3; ++ax) acc += Sigma(ax) * l[ax];
        Eigen::Map<Spinor4>(kpsi.data() + i * 4) = beta() * acc;
    }

    const Complex kappa = inner_product(f, kpsi);
    CHECK(kappa.real() == doctest::Approx(1.0).epsilon(5e-3)); // measured sign: +1
    CHECK(std::abs(kappa.imag()) < 1e-8);

    // residual ||K psi - kappa psi||
    double res2 = 0.0;
    for (std::size_t i = 0; i < f.points(); ++i)
        for (int comp = 0; comp < 4; ++comp)
            res2 += std::norm(kpsi.at(i, comp) - kappa * f.at(i, comp));
    CHECK(std::sqrt(res2 * spec.cell_volume()) < 0.05);

    // J3 = L3 + Sigma_3/2 has eigenvalue m = +1/2
    SpinorField j3psi(spec, 4);
    for (std::size_t i = 0; i < f.points(); ++i) {
        Spinor4 l3;
        for (int comp = 0; comp < 4; ++comp)
            l3[comp] = lz_a.at(i, comp) - lz_b.at(i, comp);
        Eigen::Map<const Spinor4> v(f.data() + i * 4);
        Eigen::Map<Spinor4>(j3psi.data() + i * 4) = l3 + Spinor4(0.5 * Sigma(2) * v);
    }
    const Complex m = inner_product(f, j3psi);
    CHECK(m.real() == doctest::Approx(0.5).epsilon(5e-3));
}

TEST_CASE("Coulomb energy expectation matches the Sommerfeld level") {
    for (int Z : {1, 20, 40}) {
        const hydrogenic::HydrogenicState state = hydrogenic::ground_state(Z, +1);
        // the <Z/r> cusp converges slowly; Z = 40 needs the production resolution
        const GridSpec spec = GridSpec::cubic(Z >= 40 ? 128 : 64, 16.0 / Z);
        const SpinorField f = sample_state(state, spec, nullptr);
        const double kin = expectation_momentum(f, [](const Vec3& p) {
                               return algebra::h0_kernel(p);
                           }).real();
        const double pot = expectation_position(f, [Z](const Vec3& r) {
                               return -double(Z) / r.norm();
                           }).real();
        const double expected = hydrogenic::eigen_energy(1, 0.5, Z).energy;
        CHECK(std::abs(kin + pot - expected) / expected < 1e-3);
    }
}
