#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "relspin/algebra.hpp"

namespace relspin::spin_ops {

// The seven candidate relativistic spin operators compared in this project.
enum class SpinOperatorKind {
    Pauli,
    FoldyWouthuysen,
    Czachor,
    Frenkel,
    Chakrabarti,
    Pryce,
    FradkinGood,
};

inline constexpr SpinOperatorKind all_kinds[] = {
    SpinOperatorKind::Pauli,          SpinOperatorKind::FoldyWouthuysen,
    SpinOperatorKind::Czachor,        SpinOperatorKind::Frenkel,
    SpinOperatorKind::Chakrabarti,    SpinOperatorKind::Pryce,
    SpinOperatorKind::FradkinGood,
};

std::string kind_name(SpinOperatorKind kind);

// Thrown when a kernel with a p/|p|^2 factor is evaluated at p = 0.
struct DegenerateMomentum : std::domain_error {
    explicit DegenerateMomentum(const std::string& what) : std::domain_error(what) {}
};

// True for the kinds (and transforms) whose definition is singular at p = 0.
bool singular_at_zero(SpinOperatorKind kind);

// Momentum-space kernel of one spin component (component 0..2 = x,y,z),
// evaluated at the momentum eigenvalue p.  Throws DegenerateMomentum where the
// definition requires p != 0.
Matrix4c spin_kernel(SpinOperatorKind kind, int component, const Vec3& p,
                     double c = constants::c_au);

// Zero-mode policy used by grid code: the direction-dependent factor p/|p| is
// replaced by its limit along +z.  `substituted` reports whether that happened.
Matrix4c spin_kernel_grid(SpinOperatorKind kind, int component, const Vec3& p,
                          bool* substituted = nullptr, double c = constants::c_au);

// Foldy-Wouthuysen transform (p0 + m0 c - beta alpha.p) / sqrt(2 p0 (p0 + m0 c)).
Matrix4c fw_transform(const Vec3& p, double c = constants::c_au);

// Pryce transform blockdiag(I2, i sigma.p/|p|); throws DegenerateMomentum at p = 0.
Matrix4c pryce_transform(const Vec3& p, double c = constants::c_au);
Matrix4c pryce_transform_grid(const Vec3& p, bool* substituted = nullptr,
                              double c = constants::c_au);

// T_FW^-1 S T_FW for the given kind.
Matrix4c fw_representation(SpinOperatorKind kind, int component, const Vec3& p,
                           double c = constants::c_au);

// Newton-Wigner closed form; equals the Foldy-Wouthuysen kernel.
Matrix4c newton_wigner_form(int component, const Vec3& p, double c = constants::c_au);

// Momentum-space correction kernel of the explicit Foldy-Wouthuysen mean
// position operator, r_FW = r + C(p).  Hermitian for every p.
Matrix4c fw_position_correction(int component, const Vec3& p, double c = constants::c_au);

// Max pairwise deviation of the positive-energy matrix elements <u_a|S_z|u_b>
// over the listed kinds at momentum p.
double positive_energy_equivalence(const std::vector<SpinOperatorKind>& kinds,
                                   const Vec3& p, double c = constants::c_au);

} // namespace relspin::spin_ops
