#include "relspin/property_check.hpp"

#include <cmath>
#include <random>

namespace relspin::spin_ops {

using namespace relspin::algebra;

namespace {

const Complex I{0.0, 1.0};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::mt19937_64 sample_rng(std::uint64_t seed, int index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index))));
}

Vec3 uniform_direction(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double cos_t = 2.0 * u(rng) - 1.0;
    const double phi = 2.0 * constants::pi * u(rng);
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    return {sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
}

// Rodrigues rotation matrix, active rotation by theta about unit axis n.
Eigen::Matrix3d rotation_matrix(const Vec3& n, double theta) {
    Eigen::Matrix3d k;
    k << 0, -n.z(), n.y(), n.z(), 0, -n.x(), -n.y(), n.x(), 0;
    return Eigen::Matrix3d::Identity() + std::sin(theta) * k +
           (1.0 - std::cos(theta)) * (k * k);
}

// exp(-i theta n.Sigma / 2) = cos(theta/2) - i sin(theta/2) n.Sigma
Matrix4c spinor_rotation(const Vec3& n, double theta) {
    Matrix4c ns = Matrix4c::Zero();
    for (int i = 0; i < 3; ++i) ns += n[i] * Sigma(i);
    return std::cos(theta / 2.0) * identity4() - I * std::sin(theta / 2.0) * ns;
}

double scaled_norm(const Matrix4c& m, double scale) {
    return m.cwiseAbs().maxCoeff() / std::max(1.0, scale);
}

} // namespace

Vec3 sample_momentum(std::uint64_t seed, int index, double c) {
    auto rng = sample_rng(seed, index);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double mag = constants::electron_mass * c * std::pow(10.0, u(rng));
    return mag * uniform_direction(rng);
}

PropertyReport check_properties(SpinOperatorKind kind, int samples, std::uint64_t seed,
                                double c) {
    PropertyReport report;
    report.kind = kind;
    report.samples = samples;
    report.seed = seed;

    double herm = 0.0, vec = 0.0, comm_h0 = 0.0, su2 = 0.0, eig = 0.0;

#pragma omp parallel for reduction(max : herm, vec, comm_h0, su2, eig) schedule(static)
    for (int s = 0; s < samples; ++s) {
        const Vec3 p = sample_momentum(seed, s, c);

        Matrix4c comp[3];
        double op_scale = 1.0;
        for (int i = 0; i < 3; ++i) {
            comp[i] = spin_kernel(kind, i, p, c);
            op_scale = std::max(op_scale, max_abs(comp[i]));
        }

        // (a) Hermiticity
        for (int i = 0; i < 3; ++i)
            herm = std::max(herm, hermiticity_defect(comp[i]) / op_scale);

        // (b) vector under rotations: D S_j(R^-1 p) D^dag = sum_k R_kj S_k(p)
        {
            auto rng = sample_rng(seed ^ 0x726f74ull, s);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            const Vec3 axis = uniform_direction(rng);
            const double theta = 2.0 * constants::pi * u(rng);
            const Eigen::Matrix3d r = rotation_matrix(axis, theta);
            const Matrix4c d = spinor_rotation(axis, theta);
            const Vec3 p_back = r.transpose() * p;
            for (int j = 0; j < 3; ++j) {
                const Matrix4c lhs = d * spin_kernel(kind, j, p_back, c) * d.adjoint();
                Matrix4c rhs = Matrix4c::Zero();
                for (int k = 0; k < 3; ++k) rhs += r(k, j) * comp[k];
                vec = std::max(vec, scaled_norm(lhs - rhs, op_scale));
            }
        }

        // (c) [H0, S_i] = 0, scaled by |H0| |S|
        {
            const Matrix4c h0 = h0_kernel(p, c);
            const double h0_scale = max_abs(h0) * op_scale;
            for (int i = 0; i < 3; ++i)
                comm_h0 = std::max(comm_h0,
                                   scaled_norm(commutator(h0, comp[i]), h0_scale));
        }

        // (d) [S_i, S_j] = i eps_ijk S_k, scaled by |S|^2
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            const int k = (i + 2) % 3;
            const Matrix4c lhs = commutator(comp[i], comp[j]) - I * comp[k];
            su2 = std::max(su2, scaled_norm(lhs, op_scale * op_scale));
        }

        // (e) eigenvalues of each component in {+1/2, -1/2}
        for (int i = 0; i < 3; ++i) {
            Eigen::ComplexEigenSolver<Matrix4c> es(comp[i], false);
            for (int e = 0; e < 4; ++e) {
                const Complex ev = es.eigenvalues()[e];
                const double dist = std::min(std::abs(ev - Complex(0.5, 0.0)),
                                             std::abs(ev + Complex(0.5, 0.0)));
                eig = std::max(eig, dist);
            }
        }
    }

    report.hermitian_violation = herm;
    report.vector_violation = vec;
    report.h0_commutator_violation = comm_h0;
    report.su2_violation = su2;
    report.eigenvalue_violation = eig;

    report.hermitian = herm < property_tolerance;
    report.vector_under_rotations = vec < property_tolerance;
    report.commutes_with_h0 = comm_h0 < property_tolerance;
    report.su2_algebra = su2 < property_tolerance;
    report.eigenvalues_half = eig < eigenvalue_tolerance;
    return report;
}

std::array<bool, 5> table_reference(SpinOperatorKind kind) {
    // columns: hermitian, vector, commutes with H0, su2 algebra, eigenvalues +-1/2
    switch (kind) {
        case SpinOperatorKind::Pauli:           return {true, true, false, true, true};
        case SpinOperatorKind::FoldyWouthuysen: return {true, true, true, true, true};
        case SpinOperatorKind::Czachor:         return {true, true, true, false, false};
        case SpinOperatorKind::Frenkel:         return {true, true, true, false, false};
        case SpinOperatorKind::Chakrabarti:     return {false, true, false, true, true};
        case SpinOperatorKind::Pryce:           return {true, true, true, true, true};
        case SpinOperatorKind::FradkinGood:     return {true, true, true, false, true};
    }
    return {};
}

} // namespace relspin::spin_ops
