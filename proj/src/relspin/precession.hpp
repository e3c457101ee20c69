#pragma once

#include <cstdint>
#include <vector>

#include "relspin/propagate.hpp"

namespace relspin::dynamics {

struct SpinCheckpoint {
    double t_eff = 0.0; // accumulated effective interaction time
    double t = 0.0;     // wall (simulation) time
    Vec3 spin = Vec3::Zero();
    double norm = 0.0;
};

struct PrecessionResult {
    double omega = 0.0;        // slope of the transverse angle vs effective time
    double residual = 0.0;     // rms fit residual (rad)
    double total_angle = 0.0;  // accumulated rotation over the train
    int samples = 0;
    bool degenerate = false;   // total rotation below the 1e-4 rad resolution gate
    Backend backend{};
    laser::LaserConfig config{};
};

// Linear fit of phi = atan2(<S_y>, <S_z>), unwrapped, against effective time.
PrecessionResult extract_precession_frequency(const std::vector<SpinCheckpoint>& series);

// One stroboscopic pulse-train experiment: identical windowed pulses applied
// back to back, the free Foldy-Wouthuysen spin measured at every w = 0 gap.
struct PulseTrainSpec {
    int pulses = 12;
    int ramp_cycles = 4;  // Delta T in optical cycles
    int flat_cycles = 8;  // flat-top length in optical cycles
    int grid_points = 1024;
    double dt_target = 0.0; // 0 = backend default; adjusted to divide the pulse
};

// Effective interaction time of one pulse: int w(t)^(2m) dt with m = 2 for the
// quartic-scaling backends (Dirac, relativistic Pauli) and m = 1 otherwise.
double pulse_effective_time(const laser::LaserConfig& cfg, Backend backend);

struct TrainResult {
    std::vector<SpinCheckpoint> checkpoints;
    PrecessionResult fit;
    double max_norm_drift = 0.0;
    double dt_used = 0.0;
};

TrainResult run_pulse_train(Backend backend, const laser::LaserConfig& cfg,
                            const PulseTrainSpec& spec,
                            laser::WaveMode mode = laser::WaveMode::Standing);

// ---- field-strength sweep (the scaling experiment) -------------------------

struct SweepOptions {
    double lambda = 3.004662643; // 0.159 nm
    double e_min = 19.0;
    double e_max = 600.0;
    int points = 7;
    int pulses = 12;
    int ramp_cycles = 64;
    int min_flat_cycles = 32;
    int max_flat_cycles = 400000;
    double theta_total_target = 1.5e-3; // desired accumulated rotation angle
    double theta_max_per_pulse = 0.25;
    int grid_points = 64;
    double dt_dirac = 0.0; // 0 = default 0.05/(m c^2)
    double dt_pauli = 0.0; // 0 = default 0.01/omega
};

struct SweepRow {
    Backend backend{};
    double amplitude = 0.0;
    double intensity = 0.0;
    double omega = 0.0;
    double residual = 0.0;
    double predicted = 0.0; // closed-form Omega for this amplitude
    double t_eff_total = 0.0;
    int pulses = 0;
    int flat_cycles = 0;
    bool degenerate = false;
};

// Designs the pulse train for one amplitude (pulse length sized from the
// predicted precession rate of the backend) and runs it.
SweepRow run_sweep_point(Backend backend, double amplitude, const SweepOptions& opts,
                         TrainResult* train_out = nullptr);

std::vector<double> sweep_amplitudes(const SweepOptions& opts);

// Ordinary least squares slope of log(omega) vs log(amplitude), skipping
// degenerate rows.
double fit_loglog_slope(const std::vector<SweepRow>& rows);

} // namespace relspin::dynamics
