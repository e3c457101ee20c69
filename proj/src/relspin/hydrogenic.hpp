#pragma once

#include <stdexcept>

#include "relspin/algebra.hpp"

namespace relspin::hydrogenic {

// Thrown when Z alpha >= 1 and gamma = sqrt(1 - Z^2 alpha^2) turns imaginary.
struct SupercriticalZ : std::domain_error {
    explicit SupercriticalZ(const std::string& what) : std::domain_error(what) {}
};

// gamma = sqrt(1 - Z^2 alpha^2), in (0, 1]
double gamma_factor(int Z);

struct EnergyLevel {
    int n = 1;
    double j = 0.5;
    int Z = 1;
    double energy = 0.0; // includes the rest energy m0 c^2
};

// Sommerfeld level of the point-Coulomb Dirac problem.
EnergyLevel eigen_energy(int n, double j, int Z);

// Analytic 1s_{1/2} bound state of a hydrogen-like ion with nuclear charge Z.
// m_sign = +1 selects m = +1/2, m_sign = -1 selects m = -1/2.
class HydrogenicState {
public:
    HydrogenicState(int Z, int m_sign);

    Spinor4 eval(const Vec3& r) const;

    int Z() const { return z_; }
    int n() const { return 1; }
    double j() const { return 0.5; }
    double m() const { return 0.5 * m_sign_; }
    int kappa() const { return 1; } // label used by the radial construction
    double gamma() const { return gamma_; }

    // amplitude ratio of the lower to the upper radial component
    double lower_coefficient() const { return lower_coef_; }

    // analytic probability mass at r > radius (regularized incomplete gamma)
    double norm_outside_sphere(double radius) const;

private:
    int z_;
    int m_sign_;
    double gamma_;
    double norm_;       // N = (2Z)^{3/2} sqrt((1+gamma) / (2 Gamma(1+2 gamma)))
    double lower_coef_; // (1-gamma)/(Z alpha)
};

inline HydrogenicState ground_state(int Z, int m_sign) { return {Z, m_sign}; }

// Closed-form <Sigma_3/2> on the m = +1/2 ground state:
// (1/2 - w/6) / (1 + w), w = (1-gamma)^2/(Z alpha)^2.
double analytic_pauli_spin_z(int Z);

// Closed-form Var(z) of the ground state under the standard position operator:
// (2 gamma + 1)(2 gamma + 2) / (12 Z^2).
double analytic_position_variance_pauli(int Z);

} // namespace relspin::hydrogenic
