#include "relspin/spin_operators.hpp"

#include <cmath>

namespace relspin::spin_ops {

using namespace relspin::algebra;

namespace {

const Complex I{0.0, 1.0};

// (v x alpha)_i = eps_ijk v_j alpha_k as a matrix
Matrix4c cross_with_alpha(const Vec3& v, int i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    return v[j] * alpha(k) - v[k] * alpha(j);
}

// [p x (Sigma x p)]_i = p^2 Sigma_i - (p.Sigma) p_i
Matrix4c double_cross_sigma(const Vec3& p, int i) {
    Matrix4c m = p.squaredNorm() * Sigma(i);
    for (int l = 0; l < 3; ++l) m -= p[i] * p[l] * Sigma(l);
    return m;
}

Matrix4c sigma_dot(const Vec3& p) {
    Matrix4c m = Matrix4c::Zero();
    for (int l = 0; l < 3; ++l) m += p[l] * Sigma(l);
    return m;
}

} // namespace

std::string kind_name(SpinOperatorKind kind) {
    switch (kind) {
        case SpinOperatorKind::Pauli: return "pauli";
        case SpinOperatorKind::FoldyWouthuysen: return "foldy_wouthuysen";
        case SpinOperatorKind::Czachor: return "czachor";
        case SpinOperatorKind::Frenkel: return "frenkel";
        case SpinOperatorKind::Chakrabarti: return "chakrabarti";
        case SpinOperatorKind::Pryce: return "pryce";
        case SpinOperatorKind::FradkinGood: return "fradkin_good";
    }
    return "unknown";
}

bool singular_at_zero(SpinOperatorKind kind) {
    return kind == SpinOperatorKind::Pryce || kind == SpinOperatorKind::FradkinGood;
}

Matrix4c spin_kernel(SpinOperatorKind kind, int component, const Vec3& p, double c) {
    const double mc = constants::electron_mass * c;
    const double p0 = p0_value(p, c);
    const int i = component;

    switch (kind) {
        case SpinOperatorKind::Pauli:
            return 0.5 * Sigma(i);

        case SpinOperatorKind::FoldyWouthuysen:
            return 0.5 * Sigma(i) + (I / (2.0 * p0)) * (beta() * cross_with_alpha(p, i)) -
                   double_cross_sigma(p, i) / (2.0 * p0 * (p0 + mc));

        case SpinOperatorKind::Czachor:
            return (mc * mc / (2.0 * p0 * p0)) * Sigma(i) +
                   (I * mc / (2.0 * p0 * p0)) * (beta() * cross_with_alpha(p, i)) +
                   (sigma_dot(p) * p[i]) / (2.0 * p0 * p0);

        case SpinOperatorKind::Frenkel:
            return 0.5 * Sigma(i) + (I / (2.0 * mc)) * (beta() * cross_with_alpha(p, i));

        case SpinOperatorKind::Chakrabarti:
            // alpha x p = -(p x alpha)
            return 0.5 * Sigma(i) - (I / (2.0 * mc)) * cross_with_alpha(p, i) +
                   double_cross_sigma(p, i) / (2.0 * mc * (mc + p0));

        case SpinOperatorKind::Pryce: {
            const double p2 = p.squaredNorm();
            if (p2 == 0.0) throw DegenerateMomentum("Pryce spin kernel at p = 0");
            return 0.5 * (beta() * Sigma(i)) +
                   0.5 * sigma_dot(p) * (identity4() - beta()) * (p[i] / p2);
        }

        case SpinOperatorKind::FradkinGood: {
            const double p2 = p.squaredNorm();
            if (p2 == 0.0) throw DegenerateMomentum("Fradkin-Good spin kernel at p = 0");
            const Matrix4c h_over_cp0 = h0_kernel(p, c) / (c * p0);
            return 0.5 * (beta() * Sigma(i)) +
                   0.5 * sigma_dot(p) * (h_over_cp0 - beta()) * (p[i] / p2);
        }
    }
    throw std::logic_error("unreachable spin kind");
}

Matrix4c spin_kernel_grid(SpinOperatorKind kind, int component, const Vec3& p,
                          bool* substituted, double c) {
    if (substituted) *substituted = false;
    if (singular_at_zero(kind) && p.squaredNorm() == 0.0) {
        if (substituted) *substituted = true;
        // limit along +z of the direction-dependent factor
        const double mc = constants::electron_mass * c;
        const Vec3 ez{0.0, 0.0, 1.0};
        const int i = component;
        if (kind == SpinOperatorKind::Pryce) {
            return 0.5 * (beta() * Sigma(i)) +
                   0.5 * sigma_dot(ez) * (identity4() - beta()) * ez[i];
        }
        // Fradkin-Good: H0(0)/(c p0(0)) = beta, so the direction factor drops out.
        (void)mc;
        return 0.5 * (beta() * Sigma(i));
    }
    return spin_kernel(kind, component, p, c);
}

Matrix4c fw_transform(const Vec3& p, double c) {
    const double mc = constants::electron_mass * c;
    const double p0 = p0_value(p, c);
    Matrix4c num = (p0 + mc) * identity4();
    Matrix4c beta_alpha_p = Matrix4c::Zero();
    for (int i = 0; i < 3; ++i) beta_alpha_p += p[i] * (beta() * alpha(i));
    num -= beta_alpha_p;
    return num / std::sqrt(2.0 * p0 * (p0 + mc));
}

Matrix4c pryce_transform(const Vec3& p, double c) {
    (void)c;
    const double pn = p.norm();
    if (pn == 0.0) throw DegenerateMomentum("Pryce transform at p = 0");
    Matrix4c t = Matrix4c::Zero();
    t.block<2, 2>(0, 0) = Matrix2c::Identity();
    Matrix2c sp = Matrix2c::Zero();
    for (int i = 0; i < 3; ++i) sp += (p[i] / pn) * pauli(i);
    t.block<2, 2>(2, 2) = I * sp;
    return t;
}

Matrix4c pryce_transform_grid(const Vec3& p, bool* substituted, double c) {
    if (substituted) *substituted = false;
    if (p.squaredNorm() == 0.0) {
        if (substituted) *substituted = true;
        return pryce_transform(Vec3{0.0, 0.0, 1.0}, c);
    }
    return pryce_transform(p, c);
}

Matrix4c fw_representation(SpinOperatorKind kind, int component, const Vec3& p, double c) {
    const Matrix4c t = fw_transform(p, c);
    return t.adjoint() * spin_kernel(kind, component, p, c) * t;
}

Matrix4c newton_wigner_form(int component, const Vec3& p, double c) {
    const double mc = constants::electron_mass * c;
    const double p0 = p0_value(p, c);
    const int i = component;
    Matrix4c m = (p0 / (2.0 * mc)) * Sigma(i);
    m -= (sigma_dot(p) * p[i]) / (2.0 * mc * (mc + p0));
    m -= cross_with_alpha(p, i) * (I * h0_kernel(p, c) / (2.0 * mc * c * p0));
    return m;
}

Matrix4c fw_position_correction(int component, const Vec3& p, double c) {
    const double mc = constants::electron_mass * c;
    const double p0 = p0_value(p, c);
    const int i = component;
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    // (Sigma x p)_i
    Matrix4c sigma_cross_p = Sigma(j) * p[k] - Sigma(k) * p[j];
    Matrix4c alpha_p = Matrix4c::Zero();
    for (int l = 0; l < 3; ++l) alpha_p += p[l] * alpha(l);

    Matrix4c inner = (I * sigma_cross_p) / (2.0 * p0 * (p0 + mc));
    inner -= (beta() * alpha_p * p[i]) / (2.0 * p0 * p0 * (p0 + mc));
    inner += (beta() * alpha(i)) / (2.0 * p0);
    return I * inner;
}

double positive_energy_equivalence(const std::vector<SpinOperatorKind>& kinds,
                                   const Vec3& p, double c) {
    // the two positive-energy eigenstates at p
    const Matrix4c t = fw_transform(p, c);
    const Spinor4 u1 = t.col(0);
    const Spinor4 u2 = t.col(1);

    std::vector<Matrix2c> blocks;
    blocks.reserve(kinds.size());
    for (const auto kind : kinds) {
        const Matrix4c s = spin_kernel(kind, 2, p, c);
        Matrix2c m;
        m(0, 0) = u1.dot(s * u1);
        m(0, 1) = u1.dot(s * u2);
        m(1, 0) = u2.dot(s * u1);
        m(1, 1) = u2.dot(s * u2);
        blocks.push_back(m);
    }

    double dev = 0.0;
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = a + 1; b < blocks.size(); ++b)
            dev = std::max(dev, (blocks[a] - blocks[b]).cwiseAbs().maxCoeff());
    return dev;
}

} // namespace relspin::spin_ops
