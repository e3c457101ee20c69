#include "relspin/algebra.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "relspin/spin_operators.hpp"

namespace relspin::algebra {

namespace {

const Complex I{0.0, 1.0};

std::array<Matrix2c, 3> make_pauli() {
    std::array<Matrix2c, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -I, I, 0;
    s[2] << 1, 0, 0, -1;
    return s;
}

std::array<Matrix4c, 3> make_alpha() {
    std::array<Matrix4c, 3> a;
    for (int i = 0; i < 3; ++i) {
        a[i].setZero();
        a[i].block<2, 2>(0, 2) = pauli(i);
        a[i].block<2, 2>(2, 0) = pauli(i);
    }
    return a;
}

Matrix4c make_beta() {
    Matrix4c b = Matrix4c::Zero();
    b.block<2, 2>(0, 0) = Matrix2c::Identity();
    b.block<2, 2>(2, 2) = -Matrix2c::Identity();
    return b;
}

std::array<Matrix4c, 3> make_Sigma() {
    std::array<Matrix4c, 3> s;
    for (int i = 0; i < 3; ++i) {
        s[i].setZero();
        s[i].block<2, 2>(0, 0) = pauli(i);
        s[i].block<2, 2>(2, 2) = pauli(i);
    }
    return s;
}

} // namespace

const Matrix2c& pauli(int i) {
    static const auto s = make_pauli();
    return s.at(static_cast<std::size_t>(i));
}

const Matrix4c& alpha(int i) {
    static const auto a = make_alpha();
    return a.at(static_cast<std::size_t>(i));
}

const Matrix4c& beta() {
    static const Matrix4c b = make_beta();
    return b;
}

const Matrix4c& Sigma(int i) {
    static const auto s = make_Sigma();
    return s.at(static_cast<std::size_t>(i));
}

const Matrix4c& identity4() {
    static const Matrix4c id = Matrix4c::Identity();
    return id;
}

double max_abs(const Matrix4c& m) {
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix4c& m) {
    return max_abs(m - Matrix4c(m.adjoint()));
}

double p0_value(const Vec3& p, double c) {
    const double mc = constants::electron_mass * c;
    return std::sqrt(mc * mc + p.squaredNorm());
}

Matrix4c h0_kernel(const Vec3& p, double c) {
    Matrix4c h = constants::electron_mass * c * c * beta();
    for (int i = 0; i < 3; ++i) h += c * p[i] * alpha(i);
    return h;
}

PlaneWaveSpinor fw_basis_state(const PlaneWaveLabel& label) {
    int slot = (label.energy == EnergySign::Positive) ? 0 : 2;
    if (label.spin == SpinProjection::Down) slot += 1;
    Spinor4 a = Spinor4::Zero();
    a[slot] = 1.0;
    return {label.p, a};
}

PlaneWaveSpinor standard_rep_eigenstate(const PlaneWaveLabel& label, double c) {
    const PlaneWaveSpinor fw = fw_basis_state(label);
    return {label.p, spin_ops::fw_transform(label.p, c) * fw.amplitude};
}

} // namespace relspin::algebra
