#pragma once

#include <vector>

#include "relspin/laser.hpp"

namespace relspin::classical {

enum class TorqueModel { MagneticOnly, SpinDensityOnly, Both };

std::string model_name(TorqueModel model);

// One classical spin at a fixed position on the propagation axis; |s| = 1/2.
struct ClassicalSpin {
    double x = 0.0;
    Vec3 s{0.0, 0.0, 0.5};
};

// ds/dt for the selected torque model.  MagneticOnly is (q/m0) s x B with the
// standing-wave B; SpinDensityOnly is the closed form
// -((q E)^2 lambda cos^2 kx / (pi m0^2 c^3)) s x e_x (circular polarization).
Vec3 torque(const ClassicalSpin& spin, double t, const laser::LaserConfig& cfg,
            TorqueModel model);

struct Trajectory {
    double x = 0.0;
    std::vector<Vec3> samples;
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<Trajectory> trajectories;
    bool regime_violation = false; // Omega_L / omega > 0.1
};

// Classic fourth-order integration with per-step renormalization of |s|;
// samples every `sample_stride` steps (0 = only endpoints).
EnsembleResult integrate_ensemble(std::vector<ClassicalSpin> spins,
                                  const laser::LaserConfig& cfg, TorqueModel model,
                                  double t_end, double dt, int sample_stride = 0);

// N spins aligned with e_z, positions uniform over one wavelength.
std::vector<ClassicalSpin> uniform_ensemble(const laser::LaserConfig& cfg, int count);

// Secular rotation rate about e_x of one trajectory: accumulated unwrapped
// angle atan2(s_y, s_z) divided by elapsed time.
double secular_rate(const Trajectory& traj, const std::vector<double>& times);

// Ensemble mean of the secular rates.
double wavelength_averaged_rotation(const EnsembleResult& result);

} // namespace relspin::classical
