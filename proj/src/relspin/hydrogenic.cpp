#include "relspin/hydrogenic.hpp"

#include <cmath>

namespace relspin::hydrogenic {

namespace {

const Complex I{0.0, 1.0};

void require_subcritical(int Z) {
    if (Z < 1) throw SupercriticalZ("Z must be >= 1");
    if (Z * constants::alpha_fs >= 1.0)
        throw SupercriticalZ("Z alpha >= 1 for Z = " + std::to_string(Z));
}

} // namespace

double gamma_factor(int Z) {
    require_subcritical(Z);
    const double za = Z * constants::alpha_fs;
    return std::sqrt(1.0 - za * za);
}

EnergyLevel eigen_energy(int n, double j, int Z) {
    require_subcritical(Z);
    if (n < 1 || j < 0.5 || j > n - 0.5)
        throw std::invalid_argument("invalid quantum numbers (n, j)");
    const double za = Z * constants::alpha_fs;
    const double root = std::sqrt((j + 0.5) * (j + 0.5) - za * za);
    const double frac = za / (n - j - 0.5 + root);
    const double energy = constants::rest_energy / std::sqrt(1.0 + frac * frac);
    return {n, j, Z, energy};
}

HydrogenicState::HydrogenicState(int Z, int m_sign) : z_(Z), m_sign_(m_sign) {
    if (m_sign != 1 && m_sign != -1)
        throw std::invalid_argument("m_sign must be +1 or -1");
    gamma_ = gamma_factor(Z);
    const double two_z = 2.0 * constants::electron_mass * Z;
    norm_ = std::pow(two_z, 1.5) *
            std::sqrt((1.0 + gamma_) / (2.0 * std::tgamma(1.0 + 2.0 * gamma_)));
    lower_coef_ = (1.0 - gamma_) / (Z * constants::alpha_fs);
}

Spinor4 HydrogenicState::eval(const Vec3& rvec) const {
    const double r = rvec.norm();
    const double two_zr = 2.0 * constants::electron_mass * z_ * r;
    // radial function e^{-Zr} / (2Zr)^{1-gamma}
    const double radial = norm_ * std::exp(-constants::electron_mass * z_ * r) *
                          std::pow(two_zr, gamma_ - 1.0);

    // spherical harmonics at the direction of rvec:
    // Y00 = 1/sqrt(4pi), Y10 = sqrt(3/4pi) cos(theta), Y1,+-1 = -+ sqrt(3/8pi) sin(theta) e^{+-i phi}
    const double y00 = 1.0 / std::sqrt(4.0 * constants::pi);
    const double cos_t = rvec.z() / r;
    const Complex e_ip_sin_t = Complex(rvec.x(), rvec.y()) / r; // sin(theta) e^{i phi}
    const Complex y10 = std::sqrt(3.0 / (4.0 * constants::pi)) * cos_t;
    const Complex y1p1 = -std::sqrt(3.0 / (8.0 * constants::pi)) * e_ip_sin_t;
    const Complex y1m1 = std::sqrt(3.0 / (8.0 * constants::pi)) * std::conj(e_ip_sin_t);

    const double a = lower_coef_;
    Spinor4 s;
    if (m_sign_ > 0) {
        s[0] = y00;
        s[1] = 0.0;
        s[2] = I * a * std::sqrt(1.0 / 3.0) * y10;
        s[3] = -I * a * std::sqrt(2.0 / 3.0) * y1p1;
    } else {
        s[0] = 0.0;
        s[1] = y00;
        s[2] = I * a * std::sqrt(2.0 / 3.0) * y1m1;
        s[3] = -I * a * std::sqrt(1.0 / 3.0) * y10;
    }
    return radial * s;
}

namespace {

// Regularized upper incomplete gamma Q(a, x): series for x < a + 1, Lentz
// continued fraction otherwise.
double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    double b = x + 1.0 - a;
    double cc = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        cc = b + an / cc;
        if (std::abs(cc) < 1e-300) cc = 1e-300;
        d = 1.0 / d;
        const double del = d * cc;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

} // namespace

double HydrogenicState::norm_outside_sphere(double radius) const {
    if (radius <= 0.0) return 1.0;
    // radial density ~ t^{2 gamma} e^{-t} with t = 2 Z r
    return gamma_q(2.0 * gamma_ + 1.0, 2.0 * constants::electron_mass * z_ * radius);
}

double analytic_pauli_spin_z(int Z) {
    const double g = gamma_factor(Z);
    const double a = (1.0 - g) / (Z * constants::alpha_fs);
    const double w = a * a;
    return (0.5 - w / 6.0) / (1.0 + w);
}

double analytic_position_variance_pauli(int Z) {
    const double g = gamma_factor(Z);
    return (2.0 * g + 1.0) * (2.0 * g + 2.0) / (12.0 * double(Z) * double(Z));
}

} // namespace relspin::hydrogenic
