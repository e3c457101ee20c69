#pragma once

#include <stdexcept>

#include "relspin/algebra.hpp"

namespace relspin::laser {

// Which superposition of the two counterpropagating waves drives a run.
enum class WaveMode { Standing, TravelingForward };

// Elliptically polarized standing-wave experiment definition (atomic units).
struct LaserConfig {
    double amplitude = 0.0;   // peak electric field of one traveling wave
    double wavelength = 1.0;  // lambda
    double ellipticity = 0.5 * constants::pi; // eta in (-pi, pi]
    double total_time = 0.0;  // T
    double ramp_time = 0.0;   // Delta T

    double wave_number() const { return 2.0 * constants::pi / wavelength; }
    double angular_frequency() const { return wave_number() * constants::c_au; }
    double optical_cycle() const { return wavelength / constants::c_au; }
    double intensity() const { return constants::eps0_au * constants::c_au * amplitude * amplitude; }

    void validate() const {
        if (amplitude < 0.0) throw std::invalid_argument("amplitude must be >= 0");
        if (wavelength <= 0.0) throw std::invalid_argument("wavelength must be > 0");
        if (ellipticity <= -constants::pi || ellipticity > constants::pi)
            throw std::invalid_argument("ellipticity outside (-pi, pi]");
        if (total_time > 0.0 && (ramp_time <= 0.0 || ramp_time > 0.5 * total_time))
            throw std::invalid_argument("need 0 < ramp time <= T/2");
    }
};

// sin^2 turn-on / turn-off envelope on [0, T].  A config with total_time = 0
// means an unwindowed, permanently-on field (used by the classical model).
double window(double t, const LaserConfig& cfg);
double window_derivative(double t, const LaserConfig& cfg);

// Vector potential at position x on the propagation axis (components are the
// transverse y and z directions; the x component is identically zero).
Vec3 standing_wave_A(double x, double t, const LaserConfig& cfg);
Vec3 vector_potential(double x, double t, const LaserConfig& cfg, WaveMode mode);

struct FieldSample {
    Vec3 E;
    Vec3 B;
    Vec3 A;
};

// E = -dA/dt (including the envelope derivative) and B = curl A, closed form.
FieldSample field_sample(double x, double t, const LaserConfig& cfg,
                         WaveMode mode = WaveMode::Standing);

// eps0 E x A of one traveling wave: (eps0 E^2 lambda sin eta / 2 pi c) e_x.
Vec3 photonic_spin_density_per_wave(const LaserConfig& cfg);

// Standing-wave value eps0 E^2 lambda sin eta / (pi c).
double photonic_spin_density_standing(const LaserConfig& cfg);

// Closed-form precession frequency rho_sigma I lambda^4 alpha^2 / (2 pi^2 m0^2 c^3),
// stated for circular polarization (eta = pi/2).
double omega_prediction(const LaserConfig& cfg);

// Classical scales of the rotating-field problem.
double omega_larmor(const LaserConfig& cfg);  // q E / (m0 c)
double omega_p(const LaserConfig& cfg);       // (q E)^2 lambda / (2 pi m0^2 c^3)

} // namespace relspin::laser
