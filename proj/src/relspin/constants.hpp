#pragma once

#include <numbers>

// Hartree atomic units everywhere: hbar = m0 = |q| = 1, c = 1/alpha.
// SI values enter only through the conversion factors at the CLI boundary.
namespace relspin::constants {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018 fine-structure constant.
inline constexpr double alpha_fs = 1.0 / 137.035999084;
inline constexpr double c_au = 137.035999084;

inline constexpr double electron_mass = 1.0;
inline constexpr double electron_charge = -1.0;

// Gaussian-like atomic units: eps0 = 1/(4 pi).
inline constexpr double eps0_au = 1.0 / (4.0 * pi);

// CODATA 2018 Bohr radius and atomic field unit, for SI conversions.
inline constexpr double bohr_radius_m = 5.29177210903e-11;
inline constexpr double efield_au_V_per_m = 5.14220674763e11;

inline constexpr double rest_energy = c_au * c_au; // m0 c^2

} // namespace relspin::constants
