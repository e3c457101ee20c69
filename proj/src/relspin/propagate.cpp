#include "relspin/propagate.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>

namespace relspin::dynamics {

using namespace relspin::algebra;
namespace c = relspin::constants;

namespace {

const Complex I{0.0, 1.0};

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(Complex* p) const { fftw_free(p); }
};
using FftwArray = std::unique_ptr<Complex[], FftwFree>;

FftwArray fftw_array(std::size_t count) {
    auto* p = reinterpret_cast<Complex*>(fftw_alloc_complex(count));
    std::fill(p, p + count, Complex(0.0, 0.0));
    return FftwArray(p);
}

// sin/cos with a short Taylor form on the tiny angles the split factors use
inline void fast_sincos(double x, double& s, double& co) {
    const double ax = std::abs(x);
    if (ax < 8e-3) {
        const double x2 = x * x;
        s = x * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
        co = 1.0 - x2 / 2.0 * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0));
    } else {
        s = std::sin(x);
        co = std::cos(x);
    }
}

} // namespace

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Dirac1D: return "dirac";
        case Backend::RelativisticPauli: return "relativistic_pauli";
        case Backend::NonrelativisticPauli: return "nonrelativistic_pauli";
        case Backend::WeakFW: return "weak_fw";
    }
    return "unknown";
}

double default_time_step(Backend backend, const laser::LaserConfig& cfg) {
    if (backend == Backend::Dirac1D) return 0.05 / c::rest_energy;
    return 0.01 / cfg.angular_frequency();
}

Matrix2c weak_fw_term_symbol(WeakFwTerm term, double x, double p, double t,
                             const laser::LaserConfig& cfg, laser::WaveMode mode) {
    const laser::FieldSample f = laser::field_sample(x, t, cfg, mode);
    const double q = c::electron_charge;
    const double c2 = c::c_au * c::c_au;
    const double a2 = f.A.squaredNorm();
    const double pi2 = p * p + q * q * a2; // (p - qA)^2 with transverse p = 0
    const Matrix2c id = Matrix2c::Identity();
    const Matrix2c sig_b = f.B.y() * algebra::pauli(1) + f.B.z() * algebra::pauli(2);

    switch (term) {
        case WeakFwTerm::Kinetic:
            return (pi2 / 2.0) * id;
        case WeakFwTerm::Zeeman:
            return (-q / 2.0) * sig_b;
        case WeakFwTerm::ScalarPotential:
            return Matrix2c::Zero();
        case WeakFwTerm::MassCorrection:
            return (-pi2 * pi2 / (8.0 * c2)) * id;
        case WeakFwTerm::FieldEnergy:
            return (-q * q / (8.0 * c2 * c2)) * (c2 * f.B.squaredNorm() - f.E.squaredNorm()) * id;
        case WeakFwTerm::SpinOrbitGradient:
            // sigma.(E x p) with p along x
            return (-q / (4.0 * c2)) * p * (f.E.z() * algebra::pauli(1) - f.E.y() * algebra::pauli(2));
        case WeakFwTerm::SpinOrbitPotential: {
            const double exa = f.E.y() * f.A.z() - f.E.z() * f.A.y();
            return (q * q / (4.0 * c2)) * exa * algebra::pauli(0);
        }
        case WeakFwTerm::Darwin:
            return Matrix2c::Zero(); // div E = 0 for transverse plane waves
        case WeakFwTerm::ZeemanKinetic:
            return (q / (8.0 * c2)) * 2.0 * pi2 * sig_b;
    }
    return Matrix2c::Zero();
}

// ---------------------------------------------------------------------------
// Component-major (structure-of-arrays) state layout: component c occupies
// state[c*n .. c*n + n); each component is one contiguous FFT line.

struct Propagator1D::Impl {
    Backend backend;
    laser::LaserConfig cfg;
    PropagatorOptions opts;

    int n = 0;
    int nc = 0;
    double length = 0.0;
    double dx = 0.0;
    double dt = 0.0;

    long pulse_index = 0;
    double local_t = 0.0; // time within the current pulse

    FftwArray state;
    FftwArray scratch;
    FftwArray work1, work2, work3, work4; // cross-term scratch (WeakFW)

    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    std::vector<double> mode_p;
    // Dirac kinetic factor pieces for full and half steps
    std::vector<double> dir_cos_full, dir_sinE_full, dir_cos_half, dir_sinE_half;
    // Pauli kinetic phases
    std::vector<Complex> pau_full, pau_half;
    // geometry arrays
    std::vector<double> cos_kx, sin_kx, x_coord;
    // free FW spin kernels per mode (Dirac measurement)
    std::vector<Matrix4c> sfw[3];

    double initial_norm = 1.0;
    double norm_checkpoint = 1.0;
    long steps_since_check = 0;
    double max_drift = 0.0;

    ~Impl() {
        std::scoped_lock lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }

    void init();

    void fft(Complex* buf, bool forward) {
        auto* p = reinterpret_cast<fftw_complex*>(buf);
        fftw_execute_dft(forward ? fwd : inv, p, p);
        if (!forward) {
            const double s = 1.0 / n;
            const std::size_t count = std::size_t(n) * nc;
            for (std::size_t i = 0; i < count; ++i) buf[i] *= s;
        }
    }

    void apply_kinetic(bool half);
    void apply_interaction(double t_mid, double step);
    void apply_cross_half(double t_mid);
    void cross_apply(const Complex* in, Complex* out, double t_mid);

    void advance(long steps);
    void check_norm();

    double norm2() const {
        double s = 0.0;
        const std::size_t count = std::size_t(n) * nc;
        for (std::size_t i = 0; i < count; ++i) s += std::norm(state[i]);
        return s * dx;
    }
    Vec3 measure_spin() const;
};

void Propagator1D::Impl::init() {
    nc = (backend == Backend::Dirac1D) ? 4 : 2;
    n = opts.points;
    length = cfg.wavelength;
    dx = length / n;
    dt = opts.dt > 0.0 ? opts.dt : default_time_step(backend, cfg);

    const std::size_t count = std::size_t(n) * nc;
    state = fftw_array(count);
    scratch = fftw_array(count);
    if (backend == Backend::WeakFW) {
        work1 = fftw_array(count);
        work2 = fftw_array(count);
        work3 = fftw_array(count);
        work4 = fftw_array(count);
    }

    {
        std::scoped_lock lock(planner_mutex());
#ifdef RELSPIN_FFTW_OMP
        fftw_plan_with_nthreads(1);
#endif
        auto* p = reinterpret_cast<fftw_complex*>(state.get());
        fwd = fftw_plan_many_dft(1, &n, nc, p, nullptr, 1, n, p, nullptr, 1, n,
                                 FFTW_FORWARD, FFTW_ESTIMATE);
        inv = fftw_plan_many_dft(1, &n, nc, p, nullptr, 1, n, p, nullptr, 1, n,
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    mode_p.resize(n);
    cos_kx.resize(n);
    sin_kx.resize(n);
    x_coord.resize(n);
    const double k = cfg.wave_number();
    for (int i = 0; i < n; ++i) {
        const int f = (2 * i < n) ? i : i - n;
        mode_p[i] = 2.0 * c::pi * f / length;
        x_coord[i] = -0.5 * length + (i + 0.5) * dx;
        cos_kx[i] = std::cos(k * x_coord[i]);
        sin_kx[i] = std::sin(k * x_coord[i]);
    }

    if (backend == Backend::Dirac1D) {
        dir_cos_full.resize(n);
        dir_sinE_full.resize(n);
        dir_cos_half.resize(n);
        dir_sinE_half.resize(n);
        for (int i = 0; i < n; ++i) {
            const double e = c::c_au * std::sqrt(c::c_au * c::c_au + mode_p[i] * mode_p[i]);
            dir_cos_full[i] = std::cos(e * dt);
            dir_sinE_full[i] = std::sin(e * dt) / e;
            dir_cos_half[i] = std::cos(e * dt / 2.0);
            dir_sinE_half[i] = std::sin(e * dt / 2.0) / e;
            // normalize each factor pair so rounding bias cannot accumulate
            // coherently over ~1e9 steps
            const double rf = std::hypot(dir_cos_full[i], dir_sinE_full[i] * e);
            dir_cos_full[i] /= rf;
            dir_sinE_full[i] /= rf;
            const double rh = std::hypot(dir_cos_half[i], dir_sinE_half[i] * e);
            dir_cos_half[i] /= rh;
            dir_sinE_half[i] /= rh;
        }
        for (int comp = 0; comp < 3; ++comp) {
            sfw[comp].resize(n);
            for (int i = 0; i < n; ++i)
                sfw[comp][i] = spin_ops::spin_kernel(spin_ops::SpinOperatorKind::FoldyWouthuysen,
                                                     comp, Vec3{mode_p[i], 0.0, 0.0});
        }
        // zero-momentum positive-energy FW-spin-up eigenstate, unit norm
        const double amp = 1.0 / std::sqrt(length);
        for (int i = 0; i < n; ++i) state[i] = amp;
    } else {
        const bool quartic = (backend == Backend::WeakFW) && opts.toggles.mass_correction;
        const bool p2_on = (backend != Backend::WeakFW) || opts.toggles.kinetic;
        pau_full.resize(n);
        pau_half.resize(n);
        for (int i = 0; i < n; ++i) {
            const double p2 = mode_p[i] * mode_p[i];
            double kin = p2_on ? p2 / 2.0 : 0.0;
            if (quartic) kin -= p2 * p2 / (8.0 * c::c_au * c::c_au);
            pau_full[i] = std::exp(Complex(0.0, -dt * kin));
            pau_half[i] = std::exp(Complex(0.0, -dt * kin / 2.0));
            pau_full[i] /= std::abs(pau_full[i]);
            pau_half[i] /= std::abs(pau_half[i]);
        }
        const double amp = 1.0 / std::sqrt(length);
        for (int i = 0; i < n; ++i) state[i] = amp;
    }

    initial_norm = std::sqrt(norm2());
    norm_checkpoint = initial_norm;
}

void Propagator1D::Impl::apply_kinetic(bool half) {
    fft(state.get(), true);
    if (backend == Backend::Dirac1D) {
        const double* cf = half ? dir_cos_half.data() : dir_cos_full.data();
        const double* sf = half ? dir_sinE_half.data() : dir_sinE_full.data();
        const double mc2 = c::rest_energy;
        Complex* u0 = state.get();
        Complex* u1 = u0 + n;
        Complex* u2 = u1 + n;
        Complex* u3 = u2 + n;
        for (int i = 0; i < n; ++i) {
            const double cp = c::c_au * mode_p[i];
            const Complex h0 = cp * u3[i] + mc2 * u0[i];
            const Complex h1 = cp * u2[i] + mc2 * u1[i];
            const Complex h2 = cp * u1[i] - mc2 * u2[i];
            const Complex h3 = cp * u0[i] - mc2 * u3[i];
            const Complex f = -I * sf[i];
            u0[i] = cf[i] * u0[i] + f * h0;
            u1[i] = cf[i] * u1[i] + f * h1;
            u2[i] = cf[i] * u2[i] + f * h2;
            u3[i] = cf[i] * u3[i] + f * h3;
        }
    } else {
        const Complex* ph = half ? pau_half.data() : pau_full.data();
        Complex* u0 = state.get();
        Complex* u1 = u0 + n;
        for (int i = 0; i < n; ++i) {
            u0[i] *= ph[i];
            u1[i] *= ph[i];
        }
    }
    fft(state.get(), false);
}

void Propagator1D::Impl::apply_interaction(double t_mid, double step) {
    const double q = c::electron_charge;
    if (backend == Backend::Dirac1D) {
        Complex* u0 = state.get();
        Complex* u1 = u0 + n;
        Complex* u2 = u1 + n;
        Complex* u3 = u2 + n;
        if (opts.wave_mode == laser::WaveMode::Standing) {
            // A = -(2 w E0 / omega) cos(kx) (sin(wt), sin(wt - eta)); the
            // direction of A is x-independent, only theta varies per point.
            const double w = laser::window(t_mid, cfg);
            if (w == 0.0 || cfg.amplitude == 0.0) return;
            const double omg = cfg.angular_frequency();
            const double sy = std::sin(omg * t_mid);
            const double sz = std::sin(omg * t_mid - cfg.ellipticity);
            const double h = std::hypot(sy, sz);
            if (h < 1e-300) return;
            const double amp = 2.0 * w * cfg.amplitude / omg;
            // V = -q c alpha.A ; theta(x) = |q| c dt |A(x)|
            const double theta_coef = std::abs(q) * c::c_au * step * amp * h;
            const double by = sy / h, bz = sz / h;
            // unit direction of (-q) A at cos kx > 0
            const double dir_sign = (q > 0 ? -1.0 : 1.0) * -1.0;
            for (int i = 0; i < n; ++i) {
                const double th = theta_coef * std::abs(cos_kx[i]);
                double s, co;
                fast_sincos(th, s, co);
                const double sgn = (cos_kx[i] >= 0.0 ? dir_sign : -dir_sign);
                const Complex f = -I * (sgn * s);
                // M = by alpha_y + bz alpha_z acting on u
                const Complex m0 = bz * u2[i] - I * by * u3[i];
                const Complex m1 = I * by * u2[i] - bz * u3[i];
                const Complex m2 = bz * u0[i] - I * by * u1[i];
                const Complex m3 = I * by * u0[i] - bz * u1[i];
                u0[i] = co * u0[i] + f * m0;
                u1[i] = co * u1[i] + f * m1;
                u2[i] = co * u2[i] + f * m2;
                u3[i] = co * u3[i] + f * m3;
            }
        } else {
            for (int i = 0; i < n; ++i) {
                const Vec3 a = laser::vector_potential(x_coord[i], t_mid, cfg, opts.wave_mode);
                const double an = std::hypot(a.y(), a.z());
                if (an == 0.0) continue;
                const double th = std::abs(q) * c::c_au * step * an;
                const double s_q = (q > 0 ? -1.0 : 1.0);
                const double by = s_q * a.y() / an, bz = s_q * a.z() / an;
                double s, co;
                fast_sincos(th, s, co);
                const Complex f = -I * s;
                const Complex m0 = bz * u2[i] - I * by * u3[i];
                const Complex m1 = I * by * u2[i] - bz * u3[i];
                const Complex m2 = bz * u0[i] - I * by * u1[i];
                const Complex m3 = I * by * u0[i] - bz * u1[i];
                u0[i] = co * u0[i] + f * m0;
                u1[i] = co * u1[i] + f * m1;
                u2[i] = co * u2[i] + f * m2;
                u3[i] = co * u3[i] + f * m3;
            }
        }
        return;
    }

    // Pauli-type local factor exp(-i dt (s + b.sigma))
    const bool rel = (backend == Backend::RelativisticPauli) ||
                     (backend == Backend::WeakFW && opts.toggles.spin_orbit_potential);
    const bool zeeman = (backend != Backend::WeakFW) || opts.toggles.zeeman;
    const bool kin_a2 = (backend != Backend::WeakFW) || opts.toggles.kinetic;
    const bool wfw = (backend == Backend::WeakFW);
    const double c2 = c::c_au * c::c_au;
    Complex* u0 = state.get();
    Complex* u1 = u0 + n;

    for (int i = 0; i < n; ++i) {
        const laser::FieldSample f = laser::field_sample(x_coord[i], t_mid, cfg, opts.wave_mode);
        const double a2 = f.A.squaredNorm();
        double s_loc = kin_a2 ? q * q * a2 / 2.0 : 0.0;
        double bx = 0.0;
        double by = 0.0, bz = 0.0;
        if (zeeman) {
            by += (-q / 2.0) * f.B.y();
            bz += (-q / 2.0) * f.B.z();
        }
        if (rel) {
            const double exa = f.E.y() * f.A.z() - f.E.z() * f.A.y();
            bx += (q * q / (4.0 * c2)) * exa;
        }
        if (wfw) {
            if (opts.toggles.mass_correction) s_loc -= a2 * a2 / (8.0 * c2);
            if (opts.toggles.field_energy)
                s_loc -= (q * q / (8.0 * c2 * c2)) *
                         (c2 * f.B.squaredNorm() - f.E.squaredNorm());
            if (opts.toggles.zeeman_kinetic) {
                const double coef = (q / (4.0 * c2)) * a2; // local A^2 part of the anticommutator
                by += coef * f.B.y();
                bz += coef * f.B.z();
            }
        }
        const double bn = std::sqrt(bx * bx + by * by + bz * bz);
        double sb, cb;
        fast_sincos(bn * step, sb, cb);
        double ss, cs;
        fast_sincos(s_loc * step, ss, cs);
        const Complex phase(cs, -ss);
        const Complex w0 = u0[i], w1 = u1[i];
        if (bn > 0.0) {
            const double ux = bx / bn, uy = by / bn, uz = bz / bn;
            const Complex m0 = uz * w0 + Complex(ux, -uy) * w1;
            const Complex m1 = Complex(ux, uy) * w0 - uz * w1;
            u0[i] = phase * (cb * w0 - I * sb * m0);
            u1[i] = phase * (cb * w1 - I * sb * m1);
        } else {
            u0[i] = phase * w0;
            u1[i] = phase * w1;
        }
    }
}

// Applies the nonlocal correction terms (WeakFW only) as one Hermitian operator.
void Propagator1D::Impl::cross_apply(const Complex* in, Complex* out, double t_mid) {
    const double q = c::electron_charge;
    const double c2 = c::c_au * c::c_au;
    const auto& tg = opts.toggles;
    const std::size_t count = std::size_t(n) * nc;

    // work1 = p psi, work2 = p^2 psi
    std::memcpy(work1.get(), in, count * sizeof(Complex));
    fft(work1.get(), true);
    std::memcpy(work2.get(), work1.get(), count * sizeof(Complex));
    for (int comp = 0; comp < 2; ++comp) {
        Complex* w1 = work1.get() + std::size_t(comp) * n;
        Complex* w2 = work2.get() + std::size_t(comp) * n;
        for (int i = 0; i < n; ++i) {
            w1[i] *= mode_p[i];
            w2[i] *= mode_p[i] * mode_p[i];
        }
    }
    fft(work1.get(), false);
    fft(work2.get(), false);

    std::fill(out, out + count, Complex(0.0, 0.0));
    std::fill(work3.get(), work3.get() + count, Complex(0.0, 0.0)); // to be hit with p
    std::fill(work4.get(), work4.get() + count, Complex(0.0, 0.0)); // to be hit with p^2

    const Complex* in0 = in;
    const Complex* in1 = in + n;
    const Complex* p0 = work1.get();
    const Complex* p1 = p0 + n;
    const Complex* pp0 = work2.get();
    const Complex* pp1 = pp0 + n;

    for (int i = 0; i < n; ++i) {
        const laser::FieldSample f = laser::field_sample(x_coord[i], t_mid, cfg, opts.wave_mode);
        if (tg.spin_orbit_gradient) {
            // (1/2){M(x), p} with M = sigma_y E_z - sigma_z E_y, coef -q/4c^2
            const double coef = -q / (4.0 * c2) * 0.5;
            const double ez = f.E.z(), ey = f.E.y();
            // M v = (-ey v0 - i ez v1, i ez v0 + ey v1)
            out[i] += coef * (-ey * p0[i] - I * ez * p1[i]);
            out[n + i] += coef * (I * ez * p0[i] + ey * p1[i]);
            work3[i] += coef * (-ey * in0[i] - I * ez * in1[i]);
            work3[n + i] += coef * (I * ez * in0[i] + ey * in1[i]);
        }
        if (tg.zeeman_kinetic) {
            // (q/8c^2) {sigma.B, p^2}
            const double coef = q / (8.0 * c2);
            const double by = f.B.y(), bz = f.B.z();
            out[i] += coef * (bz * pp0[i] - I * by * pp1[i]);
            out[n + i] += coef * (I * by * pp0[i] - bz * pp1[i]);
            work4[i] += coef * (bz * in0[i] - I * by * in1[i]);
            work4[n + i] += coef * (I * by * in0[i] - bz * in1[i]);
        }
        if (tg.mass_correction) {
            // -(1/8c^2) {p^2, q^2 A^2}
            const double coef = -q * q * f.A.squaredNorm() / (8.0 * c2);
            out[i] += coef * pp0[i];
            out[n + i] += coef * pp1[i];
            work4[i] += coef * in0[i];
            work4[n + i] += coef * in1[i];
        }
    }

    // out += p (work3) + p^2 (work4)
    fft(work3.get(), true);
    fft(work4.get(), true);
    for (int comp = 0; comp < 2; ++comp) {
        Complex* w3 = work3.get() + std::size_t(comp) * n;
        Complex* w4 = work4.get() + std::size_t(comp) * n;
        for (int i = 0; i < n; ++i) {
            w3[i] *= mode_p[i];
            w4[i] *= mode_p[i] * mode_p[i];
        }
    }
    fft(work3.get(), false);
    fft(work4.get(), false);
    for (std::size_t i = 0; i < count; ++i) out[i] += work3[i] + work4[i];
}

void Propagator1D::Impl::apply_cross_half(double t_mid) {
    const auto& tg = opts.toggles;
    if (!(tg.spin_orbit_gradient || tg.zeeman_kinetic || tg.mass_correction)) return;
    // exp(-i dt/2 H_cross) by a short Taylor series; ||dt H_cross|| is tiny for
    // these correction terms, so four orders reach machine precision.
    const std::size_t count = std::size_t(n) * nc;
    const Complex step = -I * (dt / 2.0);
    std::vector<Complex> term(state.get(), state.get() + count);
    std::vector<Complex> hterm(count);
    for (int k = 1; k <= 4; ++k) {
        cross_apply(term.data(), hterm.data(), t_mid);
        const Complex f = step / double(k);
        for (std::size_t i = 0; i < count; ++i) term[i] = f * hterm[i];
        for (std::size_t i = 0; i < count; ++i) state[i] += term[i];
    }
}

void Propagator1D::Impl::advance(long steps) {
    if (steps <= 0) return;
    const bool cross = backend == Backend::WeakFW &&
                       (opts.toggles.spin_orbit_gradient || opts.toggles.zeeman_kinetic ||
                        opts.toggles.mass_correction);

    apply_kinetic(true);
    for (long s = 0; s < steps; ++s) {
        const double t_mid = local_t + (s + 0.5) * dt;
        if (cross) apply_cross_half(t_mid);
        apply_interaction(t_mid, dt);
        if (cross) apply_cross_half(t_mid);
        if (s + 1 < steps)
            apply_kinetic(false);
        else
            apply_kinetic(true);
        if (++steps_since_check >= 1000) check_norm();
    }
    local_t += steps * dt;
}

void Propagator1D::Impl::check_norm() {
    const double nn = std::sqrt(norm2());
    const double drift = std::abs(nn - norm_checkpoint);
    max_drift = std::max(max_drift, std::abs(nn - initial_norm));
    if (drift > 1e-6)
        throw UnstableStep("norm drift " + std::to_string(drift) + " per 1000 steps");
    if (opts.renormalize && nn > 0.0) {
        const double s = initial_norm / nn;
        const std::size_t count = std::size_t(n) * nc;
        for (std::size_t i = 0; i < count; ++i) state[i] *= s;
        norm_checkpoint = initial_norm;
    } else {
        norm_checkpoint = nn;
    }
    steps_since_check = 0;
}

Vec3 Propagator1D::Impl::measure_spin() const {
    Vec3 out = Vec3::Zero();
    const std::size_t count = std::size_t(n) * nc;
    if (backend == Backend::Dirac1D) {
        std::memcpy(scratch.get(), state.get(), count * sizeof(Complex));
        auto* p = reinterpret_cast<fftw_complex*>(scratch.get());
        fftw_execute_dft(fwd, p, p);
        double norm_p = 0.0;
        for (std::size_t i = 0; i < count; ++i) norm_p += std::norm(scratch[i]);
        const Complex* u0 = scratch.get();
        const Complex* u1 = u0 + n;
        const Complex* u2 = u1 + n;
        const Complex* u3 = u2 + n;
        for (int comp = 0; comp < 3; ++comp) {
            Complex acc(0.0, 0.0);
            for (int i = 0; i < n; ++i) {
                const Spinor4 u{u0[i], u1[i], u2[i], u3[i]};
                acc += u.dot(sfw[comp][i] * u);
            }
            out[comp] = acc.real() / norm_p;
        }
    } else {
        const Complex* u0 = state.get();
        const Complex* u1 = u0 + n;
        double norm_x = 0.0;
        Complex acc01(0.0, 0.0);
        double accz = 0.0;
        for (int i = 0; i < n; ++i) {
            norm_x += std::norm(u0[i]) + std::norm(u1[i]);
            acc01 += std::conj(u0[i]) * u1[i];
            accz += 0.5 * (std::norm(u0[i]) - std::norm(u1[i]));
        }
        out[0] = acc01.real() / norm_x; // <sigma_x/2>
        out[1] = acc01.imag() / norm_x; // <sigma_y/2>
        out[2] = accz / norm_x;
    }
    return out;
}

Propagator1D::Propagator1D(Backend backend, const laser::LaserConfig& cfg,
                           PropagatorOptions opts)
    : impl_(std::make_unique<Impl>()) {
    cfg.validate();
    impl_->backend = backend;
    impl_->cfg = cfg;
    impl_->opts = opts;
    impl_->init();
}

Propagator1D::~Propagator1D() = default;

void Propagator1D::run_until(double t_end) {
    const double span = t_end - impl_->local_t;
    const long steps = std::lround(span / impl_->dt);
    if (std::abs(steps * impl_->dt - span) > 1e-9 * std::max(1.0, std::abs(span)))
        throw std::invalid_argument("t_end must be a whole number of steps away");
    impl_->advance(steps);
    if (impl_->cfg.total_time > 0.0 &&
        impl_->local_t >= impl_->cfg.total_time - 0.5 * impl_->dt) {
        // pulse complete; the next run starts a fresh identical pulse
        impl_->pulse_index += 1;
        impl_->local_t = 0.0;
    }
}

double Propagator1D::time() const {
    return impl_->pulse_index * impl_->cfg.total_time + impl_->local_t;
}
double Propagator1D::dt() const { return impl_->dt; }
Backend Propagator1D::backend() const { return impl_->backend; }
double Propagator1D::norm() const { return std::sqrt(impl_->norm2()); }

Vec3 Propagator1D::spin_expectation(bool allow_field_on) const {
    if (!allow_field_on && laser::window(impl_->local_t, impl_->cfg) != 0.0)
        throw FieldOn("spin measured at w(t) != 0 without override");
    return impl_->measure_spin();
}

std::vector<double> Propagator1D::density() const {
    std::vector<double> d(impl_->n, 0.0);
    for (int comp = 0; comp < impl_->nc; ++comp) {
        const Complex* u = impl_->state.get() + std::size_t(comp) * impl_->n;
        for (int i = 0; i < impl_->n; ++i) d[i] += std::norm(u[i]);
    }
    return d;
}

grid::SpinorField Propagator1D::state() const {
    grid::SpinorField f(grid::GridSpec::line(impl_->n, impl_->length), impl_->nc);
    for (int comp = 0; comp < impl_->nc; ++comp) {
        const Complex* u = impl_->state.get() + std::size_t(comp) * impl_->n;
        for (int i = 0; i < impl_->n; ++i) f.at(std::size_t(i), comp) = u[i];
    }
    return f;
}

void Propagator1D::set_state(const grid::SpinorField& f) {
    if (f.points() != std::size_t(impl_->n) || f.ncomp() != impl_->nc)
        throw std::invalid_argument("state layout mismatch");
    for (int comp = 0; comp < impl_->nc; ++comp) {
        Complex* u = impl_->state.get() + std::size_t(comp) * impl_->n;
        for (int i = 0; i < impl_->n; ++i) u[i] = f.at(std::size_t(i), comp);
    }
    impl_->initial_norm = norm();
    impl_->norm_checkpoint = impl_->initial_norm;
}

PropagationResult propagate(const grid::SpinorField& initial, const laser::LaserConfig& cfg,
                            Backend backend, double dt, int sample_stride,
                            laser::WaveMode mode, WeakFwToggles toggles) {
    if (initial.spec().dim != 1) throw std::invalid_argument("1D initial state required");
    PropagatorOptions opts;
    opts.points = initial.spec().n[0];
    opts.dt = dt;
    opts.wave_mode = mode;
    opts.toggles = toggles;
    Propagator1D prop(backend, cfg, opts);
    prop.set_state(initial);

    PropagationResult result;
    const long total_steps = std::lround(cfg.total_time / prop.dt());
    const long stride = sample_stride > 0 ? sample_stride : total_steps;
    long done = 0;
    const double step = prop.dt();
    {
        const Vec3 s = prop.spin_expectation(true);
        result.series.push_back({0.0, s.x(), s.y(), s.z(), prop.norm()});
    }
    while (done < total_steps) {
        const long chunk = std::min(stride, total_steps - done);
        prop.run_until((done + chunk) * step);
        done += chunk;
        const Vec3 s = prop.spin_expectation(true);
        result.series.push_back({done * step, s.x(), s.y(), s.z(), prop.norm()});
    }
    result.final_state = prop.state();
    result.max_norm_drift = std::abs(result.series.back().norm - result.series.front().norm);
    return result;
}

} // namespace relspin::dynamics
