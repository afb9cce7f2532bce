#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "lenslab/errors.hpp"
#include "lenslab/mat2.hpp"

// Wigner little groups in the 2x2 covering representation.
//
// A (t, z, x) Minkowski vector is carried by the symmetric matrix
//     X = [[t + z, x], [x, t - z]],
// on which an SL(2,R) element M acts as X' = M X M^T. det X = t^2 - z^2 - x^2
// is the invariant norm. The three stabilizer families are:
//
//   elliptic    rotation sandwiched between z-boosts; fixes a massive
//               momentum moving along -z
//   parabolic   triangular (shear) matrices; fix a light-like momentum
//   hyperbolic  x-boost sandwiched between z-boosts; fixes a boosted
//               space-like vector
//
// Normal forms carry the boost asymmetry as e^{-eta} / e^{+eta} factors on
// the two off-diagonal entries.

namespace lenslab {

// ---------------------------------------------------------------------------
// parameter packs

/// Rotation angle phi in (0, pi) plus boost asymmetry eta (any real).
struct EllipticParams {
    double phi;
    double eta;
};

/// Shear parameter u (any real); the form is lower triangular.
struct ParabolicParams {
    double u;
};

/// Boost angle chi > 0 plus boost asymmetry eta (any real).
struct HyperbolicParams {
    double chi;
    double eta;
};

using LittleGroupParams =
    std::variant<EllipticParams, ParabolicParams, HyperbolicParams>;

// ---------------------------------------------------------------------------
// generators

enum class GeneratorKind {
    Rotation,        // angle phi, half-angle entries
    BoostZ,          // rapidity eta, diag(e^{eta/2}, e^{-eta/2})
    BoostX,          // rapidity chi, half-angle cosh/sinh entries
    ParabolicLower,  // unit lower triangular, parameter u
    ParabolicUpper,  // unit upper triangular, parameter u
};

inline void require_finite_param(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw invalid_input(std::string(what) + " must be finite");
    }
}

inline Mat2 rotation(double phi) {
    require_finite_param(phi, "rotation angle");
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    return {c, -s, s, c};
}

inline Mat2 boost_z(double eta) {
    require_finite_param(eta, "boost rapidity");
    const double a = std::exp(eta / 2.0);
    return diagonal(a, 1.0 / a);
}

inline Mat2 boost_x(double chi) {
    require_finite_param(chi, "boost rapidity");
    const double c = std::cosh(chi / 2.0);
    const double s = std::sinh(chi / 2.0);
    return {c, s, s, c};
}

inline Mat2 parabolic_lower(double u) {
    require_finite_param(u, "shear parameter");
    return {1.0, 0.0, u, 1.0};
}

inline Mat2 parabolic_upper(double u) {
    require_finite_param(u, "shear parameter");
    return {1.0, u, 0.0, 1.0};
}

inline Mat2 generator(GeneratorKind kind, double param) {
    switch (kind) {
        case GeneratorKind::Rotation: return rotation(param);
        case GeneratorKind::BoostZ: return boost_z(param);
        case GeneratorKind::BoostX: return boost_x(param);
        case GeneratorKind::ParabolicLower: return parabolic_lower(param);
        case GeneratorKind::ParabolicUpper: return parabolic_upper(param);
    }
    throw invalid_input("unknown generator kind");
}

// ---------------------------------------------------------------------------
// normal forms

inline void validate(const EllipticParams& p) {
    require_finite_param(p.phi, "elliptic angle");
    require_finite_param(p.eta, "elliptic asymmetry");
    if (!(p.phi > 0.0 && p.phi < std::numbers::pi)) {
        throw invalid_input("elliptic angle must lie in (0, pi)");
    }
}

inline void validate(const ParabolicParams& p) {
    require_finite_param(p.u, "parabolic parameter");
}

inline void validate(const HyperbolicParams& p) {
    require_finite_param(p.chi, "hyperbolic angle");
    require_finite_param(p.eta, "hyperbolic asymmetry");
    if (!(p.chi > 0.0)) {
        throw invalid_input("hyperbolic angle must be positive");
    }
}

/// Canonical matrix of a little-group element. Algebraically identical to
/// the sandwich boost_z(-eta) * (rotation or x-boost) * boost_z(eta);
/// parabolic elements are plain lower shears.
inline Mat2 little_group_element(const LittleGroupParams& p) {
    if (const auto* e = std::get_if<EllipticParams>(&p)) {
        validate(*e);
        const double c = std::cos(e->phi / 2.0);
        const double s = std::sin(e->phi / 2.0);
        const double a = std::exp(e->eta);
        return {c, -s / a, s * a, c};
    }
    if (const auto* h = std::get_if<HyperbolicParams>(&p)) {
        validate(*h);
        const double c = std::cosh(h->chi / 2.0);
        const double s = std::sinh(h->chi / 2.0);
        const double a = std::exp(h->eta);
        return {c, s / a, s * a, c};
    }
    const auto& q = std::get<ParabolicParams>(p);
    validate(q);
    return parabolic_lower(q.u);
}

/// Alias: the normal form of a parameter pack is its canonical matrix.
inline Mat2 normal_form(const LittleGroupParams& p) {
    return little_group_element(p);
}

// ---------------------------------------------------------------------------
// vectors and the covering action

/// Minkowski (t, z, x) vector; the y direction plays no role here.
struct ThreeVector {
    double t = 0.0;
    double z = 0.0;
    double x = 0.0;

    double minkowski_norm() const { return t * t - z * z - x * x; }

    friend constexpr bool operator==(const ThreeVector&, const ThreeVector&) = default;
};

inline double max_abs_diff(const ThreeVector& a, const ThreeVector& b) {
    return std::max({std::fabs(a.t - b.t), std::fabs(a.z - b.z),
                     std::fabs(a.x - b.x)});
}

inline std::ostream& operator<<(std::ostream& os, const ThreeVector& v) {
    return os << "(" << v.t << ", " << v.z << ", " << v.x << ")";
}

enum class MomentumKind {
    MassiveRest,    // (m, 0, 0)
    MassiveMoving,  // (m cosh eta, -m sinh eta, 0): moving along -z
    Lightlike,      // (w, -w, 0): the -z direction matches the lower-shear
                    // stabilizer and the massive -z contraction limit; the
                    // mirror (w, +w, 0) is stabilized by upper shears
    Spacelike,      // (0, m, 0), norm -m^2
};

inline ThreeVector four_momentum(MomentumKind kind, double scale,
                                 double eta = 0.0) {
    if (!std::isfinite(scale) || scale <= 0.0) {
        throw invalid_input("momentum scale must be positive and finite");
    }
    require_finite_param(eta, "momentum rapidity");
    switch (kind) {
        case MomentumKind::MassiveRest: return {scale, 0.0, 0.0};
        case MomentumKind::MassiveMoving:
            return {scale * std::cosh(eta), -scale * std::sinh(eta), 0.0};
        case MomentumKind::Lightlike: return {scale, -scale, 0.0};
        case MomentumKind::Spacelike: return {0.0, scale, 0.0};
    }
    throw invalid_input("unknown momentum kind");
}

/// X' = M X M^T on X = [[t+z, x], [x, t-z]]. Preserves the Minkowski norm.
inline ThreeVector vector_action(const Mat2& m, const ThreeVector& v,
                                 double det_tol = 1e-9) {
    if (!m.finite()) throw invalid_input("matrix entries must be finite");
    if (std::fabs(m.det() - 1.0) > det_tol) {
        throw invalid_input("vector action requires a unimodular matrix");
    }
    const Mat2 xm{v.t + v.z, v.x, v.x, v.t - v.z};
    const Mat2 out = m * xm * m.transpose();
    return {(out.m11 + out.m22) / 2.0, (out.m11 - out.m22) / 2.0, out.m12};
}

/// Max-norm of (M acting on v) minus v; zero when M stabilizes v.
inline double invariance_residual(const Mat2& m, const ThreeVector& v,
                                  double det_tol = 1e-9) {
    return max_abs_diff(vector_action(m, v, det_tol), v);
}

}  // namespace lenslab
