#include "relspin/laser.hpp"

#include <cmath>

namespace relspin::laser {

namespace c = relspin::constants;

double window(double t, const LaserConfig& cfg) {
    const double T = cfg.total_time;
    const double dT = cfg.ramp_time;
    if (T <= 0.0) return 1.0; // total_time = 0 means "field permanently on"
    if (t <= 0.0 || t >= T) return 0.0;
    if (t < dT) {
        const double s = std::sin(0.5 * c::pi * t / dT);
        return s * s;
    }
    if (t > T - dT) {
        const double s = std::sin(0.5 * c::pi * (T - t) / dT);
        return s * s;
    }
    return 1.0;
}

double window_derivative(double t, const LaserConfig& cfg) {
    const double T = cfg.total_time;
    const double dT = cfg.ramp_time;
    if (T <= 0.0) return 0.0;
    if (t <= 0.0 || t >= T) return 0.0;
    if (t < dT) return (0.5 * c::pi / dT) * std::sin(c::pi * t / dT);
    if (t > T - dT) return -(0.5 * c::pi / dT) * std::sin(c::pi * (T - t) / dT);
    return 0.0;
}

Vec3 standing_wave_A(double x, double t, const LaserConfig& cfg) {
    const double k = cfg.wave_number();
    const double w = cfg.angular_frequency();
    const double env = window(t, cfg);
    const double pref = -2.0 * env * cfg.amplitude / w * std::cos(k * x);
    return {0.0, pref * std::sin(w * t), pref * std::sin(w * t - cfg.ellipticity)};
}

namespace {

// A of the wave running toward +x: (E/w) [sin(kx - wt) e_y + sin(kx - wt + eta) e_z]
Vec3 traveling_wave_A(double x, double t, const LaserConfig& cfg) {
    const double k = cfg.wave_number();
    const double w = cfg.angular_frequency();
    const double env = window(t, cfg);
    const double pref = env * cfg.amplitude / w;
    const double ph = k * x - w * t;
    return {0.0, pref * std::sin(ph), pref * std::sin(ph + cfg.ellipticity)};
}

} // namespace

Vec3 vector_potential(double x, double t, const LaserConfig& cfg, WaveMode mode) {
    return mode == WaveMode::Standing ? standing_wave_A(x, t, cfg)
                                      : traveling_wave_A(x, t, cfg);
}

FieldSample field_sample(double x, double t, const LaserConfig& cfg, WaveMode mode) {
    const double k = cfg.wave_number();
    const double w = cfg.angular_frequency();
    const double env = window(t, cfg);
    const double denv = window_derivative(t, cfg);
    FieldSample out;
    out.A = vector_potential(x, t, cfg, mode);

    if (mode == WaveMode::Standing) {
        const double cx = std::cos(k * x);
        const double sx = std::sin(k * x);
        const double a0 = 2.0 * cfg.amplitude / w;
        // E = -dA/dt, with the envelope term
        out.E = {0.0,
                 a0 * cx * (denv * std::sin(w * t) + env * w * std::cos(w * t)),
                 a0 * cx * (denv * std::sin(w * t - cfg.ellipticity) +
                            env * w * std::cos(w * t - cfg.ellipticity))};
        // B = curl A = (0, -dA_z/dx, dA_y/dx)
        out.B = {0.0, -a0 * env * k * sx * std::sin(w * t - cfg.ellipticity),
                 a0 * env * k * sx * std::sin(w * t)};
    } else {
        const double ph = k * x - w * t;
        const double a0 = cfg.amplitude / w;
        out.E = {0.0,
                 -a0 * (denv * std::sin(ph) - env * w * std::cos(ph)),
                 -a0 * (denv * std::sin(ph + cfg.ellipticity) -
                        env * w * std::cos(ph + cfg.ellipticity))};
        out.B = {0.0, -a0 * env * k * std::cos(ph + cfg.ellipticity),
                 a0 * env * k * std::cos(ph)};
    }
    return out;
}

Vec3 photonic_spin_density_per_wave(const LaserConfig& cfg) {
    const double v = c::eps0_au * cfg.amplitude * cfg.amplitude * cfg.wavelength *
                     std::sin(cfg.ellipticity) / (2.0 * c::pi * c::c_au);
    return {v, 0.0, 0.0};
}

double photonic_spin_density_standing(const LaserConfig& cfg) {
    return c::eps0_au * cfg.amplitude * cfg.amplitude * cfg.wavelength *
           std::sin(cfg.ellipticity) / (c::pi * c::c_au);
}

double omega_prediction(const LaserConfig& cfg) {
    const double rho = c::eps0_au * cfg.amplitude * cfg.amplitude * cfg.wavelength /
                       (c::pi * c::c_au);
    const double lam4 = std::pow(cfg.wavelength, 4);
    return rho * cfg.intensity() * lam4 * c::alpha_fs * c::alpha_fs /
           (2.0 * c::pi * c::pi * c::c_au * c::c_au * c::c_au);
}

double omega_larmor(const LaserConfig& cfg) {
    return std::abs(c::electron_charge) * cfg.amplitude / (c::electron_mass * c::c_au);
}

double omega_p(const LaserConfig& cfg) {
    const double qe = c::electron_charge * cfg.amplitude;
    const double c3 = c::c_au * c::c_au * c::c_au;
    return qe * qe * cfg.wavelength / (2.0 * c::pi * c::electron_mass * c::electron_mass * c3);
}

} // namespace relspin::laser
