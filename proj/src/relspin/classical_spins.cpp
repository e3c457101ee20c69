#include "relspin/classical_spins.hpp"

#include <cmath>
#include <stdexcept>

namespace relspin::classical {

namespace c = relspin::constants;

std::string model_name(TorqueModel model) {
    switch (model) {
        case TorqueModel::MagneticOnly: return "magnetic";
        case TorqueModel::SpinDensityOnly: return "spin_density";
        case TorqueModel::Both: return "both";
    }
    return "unknown";
}

namespace {

Vec3 magnetic_torque(const Vec3& s, double x, double t, const laser::LaserConfig& cfg) {
    const laser::FieldSample f = laser::field_sample(x, t, cfg, laser::WaveMode::Standing);
    return (c::electron_charge / c::electron_mass) * s.cross(f.B);
}

Vec3 spin_density_torque(const Vec3& s, double x, const laser::LaserConfig& cfg) {
    const double qe = c::electron_charge * cfg.amplitude;
    const double c3 = c::c_au * c::c_au * c::c_au;
    const double ckx = std::cos(cfg.wave_number() * x);
    const double coef = qe * qe * cfg.wavelength * ckx * ckx /
                        (c::pi * c::electron_mass * c::electron_mass * c3);
    return -coef * s.cross(Vec3{1.0, 0.0, 0.0});
}

} // namespace

Vec3 torque(const ClassicalSpin& spin, double t, const laser::LaserConfig& cfg,
            TorqueModel model) {
    switch (model) {
        case TorqueModel::MagneticOnly:
            return magnetic_torque(spin.s, spin.x, t, cfg);
        case TorqueModel::SpinDensityOnly:
            return spin_density_torque(spin.s, spin.x, cfg);
        case TorqueModel::Both:
            return magnetic_torque(spin.s, spin.x, t, cfg) +
                   spin_density_torque(spin.s, spin.x, cfg);
    }
    throw std::logic_error("unreachable torque model");
}

std::vector<ClassicalSpin> uniform_ensemble(const laser::LaserConfig& cfg, int count) {
    std::vector<ClassicalSpin> spins(count);
    for (int i = 0; i < count; ++i) {
        spins[i].x = (i + 0.5) * cfg.wavelength / count - 0.5 * cfg.wavelength;
        spins[i].s = {0.0, 0.0, 0.5};
    }
    return spins;
}

EnsembleResult integrate_ensemble(std::vector<ClassicalSpin> spins,
                                  const laser::LaserConfig& cfg, TorqueModel model,
                                  double t_end, double dt, int sample_stride) {
    EnsembleResult out;
    out.regime_violation = laser::omega_larmor(cfg) / cfg.angular_frequency() > 0.1;

    const long steps = std::lround(t_end / dt);
    const long stride = sample_stride > 0 ? sample_stride : steps;

    out.times.push_back(0.0);
    for (long s = stride; s <= steps; s += stride) out.times.push_back(s * dt);

    out.trajectories.resize(spins.size());

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(spins.size()); ++i) {
        ClassicalSpin spin = spins[std::size_t(i)];
        Trajectory& traj = out.trajectories[std::size_t(i)];
        traj.x = spin.x;
        traj.samples.reserve(out.times.size());
        traj.samples.push_back(spin.s);
        const double mag = spin.s.norm();

        for (long s = 0; s < steps; ++s) {
            const double t = s * dt;
            ClassicalSpin tmp = spin;
            const Vec3 k1 = torque(tmp, t, cfg, model);
            tmp.s = spin.s + 0.5 * dt * k1;
            const Vec3 k2 = torque(tmp, t + 0.5 * dt, cfg, model);
            tmp.s = spin.s + 0.5 * dt * k2;
            const Vec3 k3 = torque(tmp, t + 0.5 * dt, cfg, model);
            tmp.s = spin.s + dt * k3;
            const Vec3 k4 = torque(tmp, t + dt, cfg, model);
            spin.s += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            spin.s *= mag / spin.s.norm();
            if ((s + 1) % stride == 0) traj.samples.push_back(spin.s);
        }
    }
    return out;
}

double secular_rate(const Trajectory& traj, const std::vector<double>& times) {
    if (traj.samples.size() < 2 || times.size() != traj.samples.size()) return 0.0;
    double prev = std::atan2(traj.samples[0].y(), traj.samples[0].z());
    double angle = 0.0;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const double raw = std::atan2(traj.samples[i].y(), traj.samples[i].z());
        double d = raw - prev;
        if (d > c::pi) d -= 2.0 * c::pi;
        if (d < -c::pi) d += 2.0 * c::pi;
        angle += d;
        prev = raw;
    }
    return angle / (times.back() - times.front());
}

double wavelength_averaged_rotation(const EnsembleResult& result) {
    double acc = 0.0;
    for (const auto& traj : result.trajectories) acc += secular_rate(traj, result.times);
    return acc / double(result.trajectories.size());
}

} // namespace relspin::classical
