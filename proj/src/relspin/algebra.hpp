#pragma once

#include <Eigen/Dense>
#include <complex>

#include "relspin/constants.hpp"

namespace relspin {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Spinor4 = Eigen::Vector4cd;
using Spinor2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;

namespace algebra {

// Pauli matrices sigma_1..sigma_3; index is 0-based.
const Matrix2c& pauli(int i);

// Dirac representation alpha_i, beta, Sigma_i.
const Matrix4c& alpha(int i);
const Matrix4c& beta();
const Matrix4c& Sigma(int i);
const Matrix4c& identity4();

inline Matrix4c commutator(const Matrix4c& a, const Matrix4c& b) { return a * b - b * a; }
inline Matrix4c anticommutator(const Matrix4c& a, const Matrix4c& b) { return a * b + b * a; }

// max |M_ij| over all entries
double max_abs(const Matrix4c& m);

// Hermiticity defect max |M - M^dagger|
double hermiticity_defect(const Matrix4c& m);

// sqrt(m0^2 c^2 + p^2); strictly positive for all p
double p0_value(const Vec3& p, double c = constants::c_au);

// Free Dirac Hamiltonian at momentum p: c alpha.p + m0 c^2 beta
Matrix4c h0_kernel(const Vec3& p, double c = constants::c_au);

enum class EnergySign { Positive, Negative };
enum class SpinProjection { Up, Down };

// Label of one of the four free-particle basis states at momentum p.
struct PlaneWaveLabel {
    EnergySign energy;
    Vec3 p;
    SpinProjection spin;
};

// Constant spinor amplitude of a plane wave; the full wave is amplitude * exp(i p.r).
struct PlaneWaveSpinor {
    Vec3 p;
    Spinor4 amplitude;

    Spinor4 eval(const Vec3& r) const {
        return amplitude * std::exp(Complex(0.0, p.dot(r)));
    }
};

// Basis spinor in the Foldy-Wouthuysen representation: unit vector in the slot
// selected by (energy sign, spin), slots ordered (+up, +down, -up, -down).
PlaneWaveSpinor fw_basis_state(const PlaneWaveLabel& label);

// Same state transported to the standard representation, an eigenstate of
// h0_kernel(p) with eigenvalue sign given by the label.
PlaneWaveSpinor standard_rep_eigenstate(const PlaneWaveLabel& label, double c = constants::c_au);

} // namespace algebra
} // namespace relspin
