#include "relspin/precession.hpp"

#include <algorithm>
#include <cmath>

namespace relspin::dynamics {

namespace c = relspin::constants;

PrecessionResult extract_precession_frequency(const std::vector<SpinCheckpoint>& series) {
    PrecessionResult out;
    out.samples = int(series.size());
    if (series.size() < 2) {
        out.degenerate = true;
        return out;
    }

    // unwrapped transverse angle
    std::vector<double> phi(series.size());
    double prev = std::atan2(series[0].spin.y(), series[0].spin.z());
    phi[0] = prev;
    double offset = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double raw = std::atan2(series[i].spin.y(), series[i].spin.z());
        double d = raw - prev;
        if (d > c::pi) offset -= 2.0 * c::pi;
        if (d < -c::pi) offset += 2.0 * c::pi;
        phi[i] = raw + offset;
        prev = raw;
    }

    out.total_angle = phi.back() - phi.front();
    out.degenerate = std::abs(out.total_angle) < 1e-4;

    // least squares line phi = a + omega * t_eff
    double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
    const double n = double(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        st += series[i].t_eff;
        sp += phi[i];
        stt += series[i].t_eff * series[i].t_eff;
        stp += series[i].t_eff * phi[i];
    }
    const double denom = n * stt - st * st;
    if (denom <= 0.0) {
        out.degenerate = true;
        return out;
    }
    out.omega = (n * stp - st * sp) / denom;
    const double intercept = (sp - out.omega * st) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double r = phi[i] - (intercept + out.omega * series[i].t_eff);
        ss += r * r;
    }
    out.residual = std::sqrt(ss / n);
    return out;
}

double pulse_effective_time(const laser::LaserConfig& cfg, Backend backend) {
    const int m = (backend == Backend::NonrelativisticPauli) ? 1 : 2;
    // Simpson quadrature of w^(2m); the window is smooth and the grid fine.
    const int steps = 4096;
    const double h = cfg.total_time / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double w = laser::window(i * h, cfg);
        const double f = std::pow(w * w, m);
        const double weight = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += weight * f;
    }
    return acc * h / 3.0;
}

TrainResult run_pulse_train(Backend backend, const laser::LaserConfig& cfg,
                            const PulseTrainSpec& spec, laser::WaveMode mode) {
    laser::LaserConfig pulse = cfg;
    const double cycle = cfg.optical_cycle();
    pulse.ramp_time = spec.ramp_cycles * cycle;
    pulse.total_time = (2 * spec.ramp_cycles + spec.flat_cycles) * cycle;
    pulse.validate();

    const double dt_target = spec.dt_target > 0.0 ? spec.dt_target
                                                  : default_time_step(backend, pulse);
    const long steps_per_pulse = std::max(1L, std::lround(pulse.total_time / dt_target));
    const double dt = pulse.total_time / double(steps_per_pulse);

    PropagatorOptions opts;
    opts.points = spec.grid_points;
    opts.dt = dt;
    opts.wave_mode = mode;
    opts.renormalize = true; // trains run up to ~1e9 steps
    Propagator1D prop(backend, pulse, opts);

    const double t_eff_pulse = pulse_effective_time(pulse, backend);

    TrainResult out;
    out.dt_used = dt;
    const double norm0 = prop.norm();
    {
        const Vec3 s = prop.spin_expectation();
        out.checkpoints.push_back({0.0, 0.0, s, norm0});
    }
    for (int pulse_i = 0; pulse_i < spec.pulses; ++pulse_i) {
        prop.run_until(pulse.total_time);
        const Vec3 s = prop.spin_expectation();
        const double nn = prop.norm();
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(nn - norm0));
        out.checkpoints.push_back({(pulse_i + 1) * t_eff_pulse, prop.time(), s, nn});
    }
    out.fit = extract_precession_frequency(out.checkpoints);
    out.fit.backend = backend;
    out.fit.config = pulse;
    return out;
}

std::vector<double> sweep_amplitudes(const SweepOptions& opts) {
    std::vector<double> amps(opts.points);
    const double l0 = std::log10(opts.e_min);
    const double l1 = std::log10(opts.e_max);
    for (int i = 0; i < opts.points; ++i)
        amps[i] = std::pow(10.0, l0 + (l1 - l0) * i / double(opts.points - 1));
    return amps;
}

SweepRow run_sweep_point(Backend backend, double amplitude, const SweepOptions& opts,
                         TrainResult* train_out) {
    laser::LaserConfig cfg;
    cfg.amplitude = amplitude;
    cfg.wavelength = opts.lambda;
    cfg.ellipticity = 0.5 * c::pi;

    const double cycle = cfg.optical_cycle();
    const double predicted = laser::omega_prediction(cfg);
    const double rate_scale =
        (backend == Backend::NonrelativisticPauli) ? laser::omega_p(cfg) : predicted;

    // ramp contribution to the effective time: int w^{2m} over both ramps
    const int m = (backend == Backend::NonrelativisticPauli) ? 1 : 2;
    const double ramp_eff = (m == 1 ? 0.75 : 35.0 / 64.0) * opts.ramp_cycles * cycle;

    // size the flat top so the train accumulates the target angle, capped by
    // the per-pulse perturbative bound and by the runtime ceiling
    double t_eff_pulse = opts.theta_total_target / (opts.pulses * rate_scale);
    t_eff_pulse = std::min(t_eff_pulse, opts.theta_max_per_pulse / rate_scale);
    int flat = int(std::ceil((t_eff_pulse - ramp_eff) / cycle));
    flat = std::clamp(flat, opts.min_flat_cycles, opts.max_flat_cycles);

    PulseTrainSpec spec;
    spec.pulses = opts.pulses;
    spec.ramp_cycles = opts.ramp_cycles;
    spec.flat_cycles = flat;
    spec.grid_points = opts.grid_points;
    spec.dt_target = (backend == Backend::Dirac1D) ? opts.dt_dirac : opts.dt_pauli;

    TrainResult train = run_pulse_train(backend, cfg, spec);

    SweepRow row;
    row.backend = backend;
    row.amplitude = amplitude;
    row.intensity = cfg.intensity();
    row.omega = train.fit.omega;
    row.residual = train.fit.residual;
    row.predicted = predicted;
    row.t_eff_total = train.checkpoints.back().t_eff;
    row.pulses = spec.pulses;
    row.flat_cycles = flat;
    row.degenerate = train.fit.degenerate;
    if (train_out) *train_out = std::move(train);
    return row;
}

double fit_loglog_slope(const std::vector<SweepRow>& rows) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& r : rows) {
        if (r.degenerate || r.omega <= 0.0) continue;
        const double x = std::log(r.amplitude);
        const double y = std::log(r.omega);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace relspin::dynamics
