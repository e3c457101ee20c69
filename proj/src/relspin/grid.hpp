#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relspin/algebra.hpp"
#include "relspin/hydrogenic.hpp"
#include "relspin/spin_operators.hpp"

namespace relspin::grid {

struct KernelSingularAtZeroMode : std::runtime_error {
    explicit KernelSingularAtZeroMode(const std::string& what) : std::runtime_error(what) {}
};
struct NotNormalized : std::runtime_error {
    explicit NotNormalized(const std::string& what) : std::runtime_error(what) {}
};
struct BoxTooSmall : std::runtime_error {
    explicit BoxTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Periodic Cartesian grid, 1D or 3D.  Cell centers carry a half-cell offset,
// x_i = -L/2 + (i + 1/2) h, so no sample point sits at the coordinate origin.
struct GridSpec {
    int dim = 3;
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> box{0.0, 0.0, 0.0};

    static GridSpec cubic(int points, double box_length);
    static GridSpec line(int points, double box_length);

    std::size_t total() const {
        return std::size_t(n[0]) * std::size_t(n[1]) * std::size_t(n[2]);
    }
    double cell_volume() const;
    double coord(int axis, int index) const {
        return -0.5 * box[axis] + (index + 0.5) * box[axis] / n[axis];
    }
    // FFT momentum of mode index along an axis, in 2 pi / L units times mode number
    double momentum(int axis, int index) const {
        const int f = (2 * index < n[axis]) ? index : index - n[axis];
        return 2.0 * constants::pi * f / box[axis];
    }
    bool operator==(const GridSpec&) const = default;
};

// Complex multi-component field sampled on a GridSpec; component-interleaved
// storage, point-major.  Values are immutable from the caller's perspective:
// operations return new fields.
class SpinorField {
public:
    SpinorField() = default;
    SpinorField(GridSpec spec, int ncomp);

    const GridSpec& spec() const { return spec_; }
    int ncomp() const { return ncomp_; }
    std::size_t points() const { return spec_.total(); }

    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }
    Complex& at(std::size_t point, int comp) { return data_[point * ncomp_ + comp]; }
    const Complex& at(std::size_t point, int comp) const { return data_[point * ncomp_ + comp]; }

    double norm2() const; // sum |psi|^2 * cell volume
    double norm() const;
    void scale(Complex factor);
    void normalize();

private:
    GridSpec spec_{};
    int ncomp_ = 0;
    std::vector<Complex> data_;
};

using Kernel4 = std::function<Matrix4c(const Vec3&)>;
using ScalarKernel = std::function<Complex(const Vec3&)>;

// --- low-level parallel kernels (OpenMP), with serial reference versions ----
//
// The serial versions perform the identical floating-point operations in the
// identical order (blockwise reductions), so results agree bit for bit.

namespace par {
void mode_multiply_4x4(Complex* data, const GridSpec& spec, const Kernel4& kernel);
void mode_multiply_scalar(Complex* data, int ncomp, const GridSpec& spec,
                          const ScalarKernel& kernel);
void pointwise_scale(Complex* data, std::size_t count, Complex factor);
Complex dot(const Complex* a, const Complex* b, std::size_t count);
Complex mode_quadratic_form(const Complex* data, const GridSpec& spec, const Kernel4& kernel);
} // namespace par

namespace serial_ref {
void mode_multiply_4x4(Complex* data, const GridSpec& spec, const Kernel4& kernel);
void mode_multiply_scalar(Complex* data, int ncomp, const GridSpec& spec,
                          const ScalarKernel& kernel);
void pointwise_scale(Complex* data, std::size_t count, Complex factor);
Complex dot(const Complex* a, const Complex* b, std::size_t count);
Complex mode_quadratic_form(const Complex* data, const GridSpec& spec, const Kernel4& kernel);
} // namespace serial_ref

// --- FFT -------------------------------------------------------------------

// Unnormalized forward DFT / normalized (1/N) inverse, all components at once.
void fft_forward(SpinorField& f);
void fft_inverse(SpinorField& f);

// --- spectral operator application ----------------------------------------

// FFT -> per-mode 4x4 multiply -> inverse FFT.  A DegenerateMomentum raised by
// the kernel at the zero mode surfaces as KernelSingularAtZeroMode.
SpinorField apply_momentum_kernel(const SpinorField& f, const Kernel4& kernel);

// Same with a scalar (component-diagonal) symbol.
SpinorField apply_scalar_momentum_kernel(const SpinorField& f, const ScalarKernel& kernel);

// Pointwise multiplication by the coordinate along `axis`.
SpinorField multiply_coordinate(const SpinorField& f, int axis);

// <f| K(p) |f> for a momentum kernel; requires |norm - 1| <= 1e-6.
Complex expectation_momentum(const SpinorField& f, const Kernel4& kernel);

// <f| g(r) |f> for a scalar function of position.
Complex expectation_position(const SpinorField& f,
                             const std::function<double(const Vec3&)>& g);

Complex inner_product(const SpinorField& a, const SpinorField& b);

// --- sampling and figure observables ----------------------------------------

struct SampleInfo {
    double captured_norm = 0.0; // quadrature norm before renormalization
    double norm_defect = 0.0;   // |captured - 1|
};

// Evaluates the analytic bound state at cell centers and renormalizes.
SpinorField sample_state(const hydrogenic::HydrogenicState& state, const GridSpec& spec,
                         SampleInfo* info = nullptr);

// Spin expectation <S_kind,component> on a normalized 4-spinor field.
double spin_expectation(const SpinorField& f, spin_ops::SpinOperatorKind kind,
                        int component, bool* zero_mode_substituted = nullptr);

// r_X applied to the field via the unitary sandwich T_X (x_c) T_X^dagger;
// kind must be Pauli, FoldyWouthuysen or Pryce.
SpinorField apply_position_operator(const SpinorField& f, spin_ops::SpinOperatorKind kind,
                                    int component, bool* zero_mode_substituted = nullptr);

struct PositionVariance {
    double variance = 0.0;
    double first_moment = 0.0;
    bool zero_mode_substituted = false;
};

PositionVariance variance_of_position(const SpinorField& f, spin_ops::SpinOperatorKind kind,
                                      int component);

// Number of worker threads used by the parallel kernels (and the FFT).
void set_worker_count(int workers);
int worker_count();

} // namespace relspin::grid
