#pragma once

#include <cmath>
#include <string>

#include "lenslab/errors.hpp"
#include "lenslab/little_group.hpp"
#include "lenslab/mat2.hpp"

// Para-axial one-lens systems as SL(2,R) elements.
//
// The ray-transfer matrix of translation(d2) * lens(f) * translation(d1) is
//
//     [[1 - d2/f, d1 + d2 - d1 d2 / f], [-1/f, 1 - d1/f]],
//
// whose upper-right entry vanishes exactly on the focal condition
// 1/d1 + 1/d2 = 1/f. In the camera configuration (d1 > f and d2 > f) the
// matrix factors into dimensionless form: pulling out diag((d1 d2)^{1/4},
// (d1 d2)^{-1/4}) scales on both sides leaves a unimodular middle matrix in
// the reduced variables
//
//     x1 = d1/f, x2 = d2/f, x = sqrt(x1 x2),
//     cosh_rho = (sqrt(x1/x2) + sqrt(x2/x1)) / 2,
//
// and a further symmetric two-sided renormalization by diag(b, 1/b) with
// b = ((x2-1)/(x1-1))^{1/4} equalizes the diagonal, producing the core
//
//     [[z - 1, x - 2 cosh_rho], [x, z - 1]],   z = 1 + sqrt((x1-1)(x2-1)).
//
// The sign of x - 2 cosh_rho classifies the system into the three little-
// group conjugacy types; extract_params recovers the normal-form parameters.

namespace lenslab {

/// Absolute half-width of the parabolic band in x - 2 cosh_rho.
inline constexpr double default_classification_tol = 1e-10;

/// Inputs with x1 or x2 this close to 1 are rejected: the diagonal
/// renormalization ((x2-1)/(x1-1))^{1/4} degenerates there.
inline constexpr double camera_margin = 1e-12;

/// Object distance d1, image distance d2, focal length f, all in the same
/// length unit. Distances may be zero for raw composition; core extraction
/// additionally needs the camera configuration d1 > f, d2 > f.
struct LensSystem {
    double d1;
    double d2;
    double f;
};

/// Reduced one-lens parameters; all dimensionless.
struct CoreParams {
    double x1;        // d1/f > 1
    double x2;        // d2/f > 1
    double x;         // sqrt(x1 x2)
    double cosh_rho;  // (sqrt(x1/x2) + sqrt(x2/x1)) / 2 >= 1
    double z;         // 1 + sqrt((x1-1)(x2-1))
    double b;         // ((x2-1)/(x1-1))^{1/4}
};

enum class Regime { Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Elliptic: return "elliptic";
        case Regime::Parabolic: return "parabolic";
        case Regime::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

struct RegimeClassification {
    Regime regime;
    double residual;  // x - 2 cosh_rho, the quantity the band is applied to
};

struct FocalCheck {
    bool focused;
    double residual;     // f * (1/d1 + 1/d2 - 1/f), dimensionless
    double upper_right;  // m12 of the raw matrix; vanishes with the residual
};

/// Two-sided scale factorization of the raw matrix:
///
///     raw = outer_scale * (-negated_core) * inner_scale
///     negated_core = [[x2-1, x-2cosh_rho], [x, x1-1]]
///                  = b_scale * core_matrix * b_scale
///
/// negated_core is the middle factor with its overall sign flipped; the flip
/// makes every camera-configuration diagonal entry positive and lines it up
/// with the two-sided b renormalization of the core. The reconstruction of
/// the raw matrix therefore carries one explicit minus sign.
struct Decomposition {
    Mat2 outer_scale;   // diag((d1 d2)^{1/4}, (d1 d2)^{-1/4})
    Mat2 negated_core;  // [[x2-1, x-2cosh_rho], [x, x1-1]]
    Mat2 inner_scale;   // diag((d1 d2)^{-1/4}, (d1 d2)^{1/4})
    Mat2 b_scale;       // diag(b, 1/b)
    double b;
};

// ---------------------------------------------------------------------------
// validation helpers

inline void validate_focal_length(double f) {
    if (!(std::isfinite(f) && f > 0.0)) {
        throw invalid_input("focal length must be positive and finite");
    }
}

inline void validate_for_composition(const LensSystem& s) {
    validate_focal_length(s.f);
    if (!(std::isfinite(s.d1) && s.d1 >= 0.0) ||
        !(std::isfinite(s.d2) && s.d2 >= 0.0)) {
        throw invalid_input("translation distances must be non-negative and finite");
    }
}

inline void require_camera_configuration(const LensSystem& s) {
    validate_for_composition(s);
    const double x1 = s.d1 / s.f;
    const double x2 = s.d2 / s.f;
    if (!(x1 - 1.0 > camera_margin)) {
        throw configuration_error(
            "camera configuration requires d1 > f (got d1/f = " +
            std::to_string(x1) + ")");
    }
    if (!(x2 - 1.0 > camera_margin)) {
        throw configuration_error(
            "camera configuration requires d2 > f (got d2/f = " +
            std::to_string(x2) + ")");
    }
}

inline void validate(const CoreParams& p) {
    if (!(std::isfinite(p.x1) && std::isfinite(p.x2) && std::isfinite(p.x) &&
          std::isfinite(p.cosh_rho) && std::isfinite(p.z) && std::isfinite(p.b))) {
        throw invalid_input("core parameters must be finite");
    }
    if (!(p.x1 > 1.0 && p.x2 > 1.0)) {
        throw invalid_input("core parameters require x1 > 1 and x2 > 1");
    }
    if (std::fabs(p.x * p.x - p.x1 * p.x2) > 1e-9 * p.x1 * p.x2 ||
        p.cosh_rho < 1.0 - 1e-12 || p.z < 1.0) {
        throw inconsistency_error("core parameters violate their defining relations");
    }
}

// ---------------------------------------------------------------------------
// composition

inline Mat2 lens_matrix(double f) {
    validate_focal_length(f);
    return {1.0, 0.0, -1.0 / f, 1.0};
}

inline Mat2 translation_matrix(double d) {
    require_finite_param(d, "translation distance");
    return {1.0, d, 0.0, 1.0};
}

/// Closed form of translation(d2) * lens(f) * translation(d1).
inline Mat2 one_lens(const LensSystem& s) {
    validate_for_composition(s);
    return {1.0 - s.d2 / s.f, s.d1 + s.d2 - s.d1 * s.d2 / s.f, -1.0 / s.f,
            1.0 - s.d1 / s.f};
}

/// Focal-condition test. The residual is f*(1/d1 + 1/d2 - 1/f); the raw
/// upper-right entry equals (d1 d2 / f) times it and vanishes with it.
inline FocalCheck focal_check(const LensSystem& s,
                              double tol = default_classification_tol) {
    validate_for_composition(s);
    if (s.d1 == 0.0 || s.d2 == 0.0) {
        throw invalid_input("focal check requires strictly positive distances");
    }
    const double residual = s.f * (1.0 / s.d1 + 1.0 / s.d2 - 1.0 / s.f);
    return {std::fabs(residual) <= tol, residual, one_lens(s).m12};
}

// ---------------------------------------------------------------------------
// core extraction

/// Reduced parameters of a camera-configuration system. z is evaluated by
/// two independent routes, sqrt((x1-1)(x2-1)) and sqrt(x^2 - 2x cosh_rho + 1),
/// which must agree within 1e-10; disagreement is reported, never absorbed.
inline CoreParams core_params(const LensSystem& s) {
    require_camera_configuration(s);
    CoreParams p;
    p.x1 = s.d1 / s.f;
    p.x2 = s.d2 / s.f;
    p.x = std::sqrt(s.d1 * s.d2) / s.f;
    p.cosh_rho = (std::sqrt(s.d1 / s.d2) + std::sqrt(s.d2 / s.d1)) / 2.0;
    p.z = 1.0 + std::sqrt((p.x1 - 1.0) * (p.x2 - 1.0));
    p.b = std::pow((p.x2 - 1.0) / (p.x1 - 1.0), 0.25);

    double radicand = p.x * p.x - 2.0 * p.x * p.cosh_rho + 1.0;
    const double scale = p.x * p.x + 2.0 * p.x * p.cosh_rho + 1.0;
    if (radicand < 0.0) {
        if (radicand < -1e-12 * scale) {
            throw configuration_error("core extraction outside the camera configuration");
        }
        radicand = 0.0;  // rounding noise on a vanishing radicand
    }
    const double z_alt = 1.0 + std::sqrt(radicand);
    if (std::fabs(p.z - z_alt) > 1e-10) {
        throw inconsistency_error(
            "the two z evaluations disagree: " + std::to_string(p.z) + " vs " +
            std::to_string(z_alt));
    }
    return p;
}

/// [[z-1, x-2cosh_rho], [x, z-1]]; unimodular by construction, asserted.
inline Mat2 core_matrix(const CoreParams& p) {
    validate(p);
    const Mat2 m{p.z - 1.0, p.x - 2.0 * p.cosh_rho, p.x, p.z - 1.0};
    if (std::fabs(m.det() - 1.0) > 1e-10) {
        throw inconsistency_error("core matrix determinant differs from 1 by " +
                                  std::to_string(m.det() - 1.0));
    }
    return m;
}

inline Decomposition decompose(const LensSystem& s) {
    const CoreParams p = core_params(s);
    const double g = std::pow(s.d1 * s.d2, 0.25);
    Decomposition d;
    d.outer_scale = diagonal(g, 1.0 / g);
    d.inner_scale = diagonal(1.0 / g, g);
    d.negated_core = {p.x2 - 1.0, p.x - 2.0 * p.cosh_rho, p.x, p.x1 - 1.0};
    d.b_scale = diagonal(p.b, 1.0 / p.b);
    d.b = p.b;
    return d;
}

/// Classification by the sign of x - 2 cosh_rho with an absolute band of
/// half-width eps around zero. The algebraically equivalent focal-side
/// residual -x * (1/x1 + 1/x2 - 1) is recomputed as a cross-check.
inline RegimeClassification classify(const CoreParams& p,
                                     double eps = default_classification_tol) {
    validate(p);
    if (!(std::isfinite(eps) && eps > 0.0)) {
        throw invalid_input("classification tolerance must be positive");
    }
    const double r = p.x - 2.0 * p.cosh_rho;
    const double r_focal = -p.x * (1.0 / p.x1 + 1.0 / p.x2 - 1.0);
    if (std::fabs(r - r_focal) > 1e-12 * (1.0 + p.x1 + p.x2)) {
        throw inconsistency_error("regime residual routes disagree");
    }
    if (r < -eps) return {Regime::Elliptic, r};
    if (r > eps) return {Regime::Hyperbolic, r};
    return {Regime::Parabolic, r};
}

/// Classification recomputed purely from the focal-side residual, with the
/// band rescaled so the two criteria coincide. Intended for cross-checks.
inline Regime classify_by_focal(const CoreParams& p,
                                double eps = default_classification_tol) {
    validate(p);
    const double residual = 1.0 / p.x1 + 1.0 / p.x2 - 1.0;
    const double band = eps / p.x;
    if (residual > band) return Regime::Elliptic;
    if (residual < -band) return Regime::Hyperbolic;
    return Regime::Parabolic;
}

// ---------------------------------------------------------------------------
// normal-form parameter extraction

/// Recover little-group parameters from an equal-diagonal unimodular matrix
/// under the stated regime tag. Off-diagonal conventions match
/// little_group_element: m12 carries e^{-eta}, m21 carries e^{+eta}.
inline LittleGroupParams extract_params(const Mat2& core, Regime regime,
                                        double tol = 1e-9) {
    if (!core.finite()) throw invalid_input("matrix entries must be finite");
    const double scale = std::fmax(1.0, max_abs(core));
    if (std::fabs(core.m11 - core.m22) > tol * scale) {
        throw inconsistency_error("parameter extraction requires equal diagonal entries");
    }
    if (std::fabs(core.det() - 1.0) > tol * scale * scale) {
        throw inconsistency_error("parameter extraction requires a unimodular matrix");
    }

    switch (regime) {
        case Regime::Elliptic: {
            if (!(core.m11 < 1.0 && core.m11 > 0.0)) {
                throw inconsistency_error(
                    "elliptic tag requires a diagonal strictly inside (0, 1)");
            }
            if (!(core.m12 < 0.0 && core.m21 > 0.0)) {
                throw inconsistency_error(
                    "elliptic tag requires m12 < 0 < m21");
            }
            return EllipticParams{2.0 * std::acos(core.m11),
                                  0.5 * std::log(-core.m21 / core.m12)};
        }
        case Regime::Parabolic: {
            if (std::fabs(core.m11 - 1.0) > tol ||
                std::fabs(core.m12) > tol * scale) {
                throw inconsistency_error(
                    "parabolic tag requires unit diagonal and vanishing upper-right entry");
            }
            return ParabolicParams{core.m21};
        }
        case Regime::Hyperbolic: {
            if (!(core.m11 > 1.0)) {
                throw inconsistency_error(
                    "hyperbolic tag requires a diagonal greater than 1");
            }
            if (!(core.m12 > 0.0 && core.m21 > 0.0)) {
                throw inconsistency_error(
                    "hyperbolic tag requires positive off-diagonal entries");
            }
            return HyperbolicParams{2.0 * std::acosh(core.m11),
                                    0.5 * std::log(core.m21 / core.m12)};
        }
    }
    throw invalid_input("unknown regime");
}

inline Regime regime_of(const LittleGroupParams& p) {
    if (std::holds_alternative<EllipticParams>(p)) return Regime::Elliptic;
    if (std::holds_alternative<ParabolicParams>(p)) return Regime::Parabolic;
    return Regime::Hyperbolic;
}

}  // namespace lenslab
