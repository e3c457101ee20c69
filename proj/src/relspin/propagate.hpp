#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "relspin/grid.hpp"
#include "relspin/laser.hpp"

namespace relspin::dynamics {

enum class Backend { Dirac1D, RelativisticPauli, NonrelativisticPauli, WeakFW };

std::string backend_name(Backend b);

struct UnstableStep : std::runtime_error {
    explicit UnstableStep(const std::string& what) : std::runtime_error(what) {}
};
struct FieldOn : std::runtime_error {
    explicit FieldOn(const std::string& what) : std::runtime_error(what) {}
};

// Individually toggleable pieces of the weakly relativistic Foldy-Wouthuysen
// Hamiltonian.  The spin-orbit term is kept split into its E x (-i grad) part
// and its E x (-qA) part so the relativistic Pauli equation is reachable exactly.
struct WeakFwToggles {
    bool kinetic = true;            // (p - qA)^2 / 2m
    bool zeeman = true;             // -(q/2m) sigma.B
    bool scalar_potential = false;  // q phi (identically zero here)
    bool mass_correction = false;   // -(p - qA)^4 / 8 m^3 c^2
    bool field_energy = false;      // -(q^2/8 m^3 c^4)(c^2 B^2 - E^2)
    bool spin_orbit_gradient = false;  // -(q/4 m^2 c^2) sigma.(E x p), symmetrized
    bool spin_orbit_potential = true;  // +(q^2/4 m^2 c^2) sigma.(E x A)
    bool darwin = false;            // -(q/8 m^2 c^2) div E (zero for these fields)
    bool zeeman_kinetic = false;    // (q/8 m^3 c^2) {sigma.B, (p - qA)^2}

    static WeakFwToggles relativistic_pauli() { return {}; }
    static WeakFwToggles nonrelativistic_pauli() {
        WeakFwToggles t;
        t.spin_orbit_potential = false;
        return t;
    }
    static WeakFwToggles all() {
        WeakFwToggles t;
        t.mass_correction = t.field_energy = t.spin_orbit_gradient = t.darwin =
            t.zeeman_kinetic = true;
        return t;
    }
};

enum class WeakFwTerm {
    Kinetic,
    Zeeman,
    ScalarPotential,
    MassCorrection,
    FieldEnergy,
    SpinOrbitGradient,
    SpinOrbitPotential,
    Darwin,
    ZeemanKinetic,
};

// Classical symbol of one Hamiltonian term at phase-space point (x, p, t):
// the 2x2 matrix obtained by substituting the momentum eigenvalue.
Matrix2c weak_fw_term_symbol(WeakFwTerm term, double x, double p, double t,
                             const laser::LaserConfig& cfg,
                             laser::WaveMode mode = laser::WaveMode::Standing);

struct PropagatorOptions {
    int points = 1024;
    double dt = 0.0; // 0 = backend default (0.05/m c^2 Dirac, 0.01/omega Pauli)
    laser::WaveMode wave_mode = laser::WaveMode::Standing;
    WeakFwToggles toggles{}; // WeakFW backend only
    // Rescale the state to unit norm at the periodic norm checks.  The split
    // factors are exact exponentials of Hermitian operators, so this only
    // removes float rounding bias (~1e-17/step) on runs of ~1e9 steps; the
    // per-1000-step drift monitor still sees the raw drift first.
    bool renormalize = false;
};

double default_time_step(Backend backend, const laser::LaserConfig& cfg);

// Split-operator propagator on one wavelength with periodic boundaries.
// The initial state is the zero-momentum positive-energy spin-up eigenstate
// (uniform spinor); transverse canonical momenta are exactly zero throughout.
class Propagator1D {
public:
    Propagator1D(Backend backend, const laser::LaserConfig& cfg, PropagatorOptions opts);
    ~Propagator1D();

    Propagator1D(const Propagator1D&) = delete;
    Propagator1D& operator=(const Propagator1D&) = delete;

    // Advances to time t_end (must be a multiple of dt away).
    void run_until(double t_end);

    double time() const;
    double dt() const;
    Backend backend() const;

    double norm() const;

    // Free Foldy-Wouthuysen spin expectation (Dirac) or sigma/2 (Pauli).
    // Requires w(time) = 0 unless allow_field_on is set.
    Vec3 spin_expectation(bool allow_field_on = false) const;

    // |psi(x)|^2 on the grid, for diagnostics.
    std::vector<double> density() const;

    // Copies the state into a grid field (1D spec, 4 or 2 components).
    grid::SpinorField state() const;
    void set_state(const grid::SpinorField& f);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct ObservableSample {
    double t = 0.0;
    double sx = 0.0, sy = 0.0, sz = 0.0;
    double norm = 0.0;
};

struct PropagationResult {
    grid::SpinorField final_state;
    std::vector<ObservableSample> series;
    double max_norm_drift = 0.0;
};

// Runs one windowed pulse 0..cfg.total_time from the given initial state,
// sampling observables every `sample_stride` steps (field-on samples use the
// override flag internally and are marked by w != 0 times).
PropagationResult propagate(const grid::SpinorField& initial, const laser::LaserConfig& cfg,
                            Backend backend, double dt, int sample_stride = 0,
                            laser::WaveMode mode = laser::WaveMode::Standing,
                            WeakFwToggles toggles = {});

} // namespace relspin::dynamics
