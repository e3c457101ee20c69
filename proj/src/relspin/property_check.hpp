#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "relspin/spin_operators.hpp"

namespace relspin::spin_ops {

// Numerically established properties of one spin operator candidate, matching
// the five testable columns of the comparison table.
struct PropertyReport {
    SpinOperatorKind kind{};
    bool hermitian = false;
    bool vector_under_rotations = false;
    bool commutes_with_h0 = false;
    bool su2_algebra = false;
    bool eigenvalues_half = false;

    // max scaled violation observed per property, over all sampled momenta
    double hermitian_violation = 0.0;
    double vector_violation = 0.0;
    double h0_commutator_violation = 0.0;
    double su2_violation = 0.0;
    double eigenvalue_violation = 0.0;

    int samples = 0;
    std::uint64_t seed = 0;

    std::array<bool, 5> booleans() const {
        return {hermitian, vector_under_rotations, commutes_with_h0, su2_algebra,
                eigenvalues_half};
    }
};

// Tolerances: commutator/hermiticity/rotation tests use scaled violations
// against `tolerance`; the eigenvalue test uses absolute distance from +-1/2
// against `eigenvalue_tolerance`.
inline constexpr double property_tolerance = 1e-10;
inline constexpr double eigenvalue_tolerance = 1e-8;

// Samples `samples` momenta log-uniform in |p| over [1e-3, 1e3] m0 c with
// uniform directions, derived deterministically from (seed, sample index),
// and measures all five properties.
PropertyReport check_properties(SpinOperatorKind kind, int samples = 128,
                                std::uint64_t seed = 0x5350494eull,
                                double c = constants::c_au);

// Expected table rows (the reference the checker is validated against).
std::array<bool, 5> table_reference(SpinOperatorKind kind);

// Deterministic momentum sample i of the property-check distribution.
Vec3 sample_momentum(std::uint64_t seed, int index, double c = constants::c_au);

} // namespace relspin::spin_ops
