#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lenslab/errors.hpp"
#include "lenslab/little_group.hpp"
#include "lenslab/mat2.hpp"
#include "lenslab/optics.hpp"

// A single chart across all three regimes.
//
// The rotation-boost-rotation product R(theta) B(2 lambda) R(theta), with
// R the half-angle rotation and B the symmetric x-boost, multiplies out to
//
//     W(lambda, theta) = [[cosh(l) cos(t), sinh(l) - cosh(l) sin(t)],
//                         [sinh(l) + cosh(l) sin(t), cosh(l) cos(t)]].
//
// Unlike the three separate normal forms, (lambda, theta) varies smoothly as
// a system crosses the focal condition: the upper-right entry passes through
// zero while everything else stays analytic. The dictionary to lens cores is
// exact:  sinh(lambda) = x - cosh_rho,  cosh(lambda) sin(theta) = cosh_rho,
// so W reproduces [[z-1, x-2cosh_rho], [x, z-1]] entry by entry.
//
// sign_quantity = (cosh(l) sin(t) - sinh(l)) / (cosh(l) sin(t) + sinh(l))
// equals +e^{-2 eta} in the elliptic regime, 0 on the parabolic boundary and
// -e^{-2 eta} in the hyperbolic regime; eta itself diverges at the boundary,
// which is why conversions carry a conditioning flag instead of failing.

namespace lenslab {

/// |sign_quantity| below this means eta = -log|sign_quantity|/2 has absorbed
/// a near-total cancellation and its low digits are unreliable.
inline constexpr double eta_quality_threshold = 1e-8;

/// Chart coordinates. theta lies in (-pi/2, pi/2] with cos(theta) >= 0;
/// lens-derived values always land in the open (0, pi/2). Non-positive
/// theta only arises when inverting boost-dominated normal forms
/// (hyperbolic packs with eta <= 0). Conversions additionally require the
/// lower-left entry sinh(lambda) + cosh(lambda) sin(theta) to be positive.
struct WignerParams {
    double lambda;
    double theta;
};

inline void validate(const WignerParams& w) {
    require_finite_param(w.lambda, "chart rapidity");
    require_finite_param(w.theta, "chart angle");
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!(w.theta > -half_pi && w.theta <= half_pi)) {
        throw invalid_input("chart angle must lie in (-pi/2, pi/2]");
    }
}

/// Total on valid chart coordinates; no configuration requirements.
inline Mat2 wigner_matrix(const WignerParams& w) {
    validate(w);
    const double ch = std::cosh(w.lambda);
    const double sh = std::sinh(w.lambda);
    const double st = std::sin(w.theta);
    const double ct = std::cos(w.theta);
    return {ch * ct, sh - ch * st, sh + ch * st, ch * ct};
}

inline double lower_left_entry(const WignerParams& w) {
    return std::sinh(w.lambda) + std::cosh(w.lambda) * std::sin(w.theta);
}

inline void require_positive_chart(const WignerParams& w) {
    validate(w);
    if (!(lower_left_entry(w) > 0.0)) {
        throw configuration_error(
            "chart coordinates outside the positive-lower-left domain");
    }
}

/// (cosh l sin t - sinh l) / (cosh l sin t + sinh l). Positive in the
/// elliptic regime, zero on the parabolic boundary, negative in the
/// hyperbolic regime; magnitude e^{-2 eta} off the boundary.
inline double sign_quantity(const WignerParams& w) {
    validate(w);
    const double num = std::cosh(w.lambda) * std::sin(w.theta) - std::sinh(w.lambda);
    const double den = lower_left_entry(w);
    if (!(den > 0.0)) {
        throw configuration_error(
            "sign quantity undefined: lower-left entry is not positive");
    }
    return num / den;
}

/// False when eta recovered from these coordinates is numerically degraded.
inline bool eta_well_conditioned(const WignerParams& w,
                                 double threshold = eta_quality_threshold) {
    return std::fabs(sign_quantity(w)) >= threshold;
}

/// Convert chart coordinates to the matching normal-form parameters.
/// The parabolic band |upper-right| <= parabolic_tol uses the same absolute
/// tolerance as regime classification.
inline LittleGroupParams little_from_wigner(
    const WignerParams& w, double parabolic_tol = default_classification_tol) {
    require_positive_chart(w);
    const double ch = std::cosh(w.lambda);
    const double sh = std::sinh(w.lambda);
    const double upper = sh - ch * std::sin(w.theta);
    const double lower = sh + ch * std::sin(w.theta);
    const double diag = ch * std::cos(w.theta);

    if (std::fabs(upper) <= parabolic_tol) {
        return ParabolicParams{2.0 * sh};
    }
    if (upper < 0.0) {
        if (!(diag < 1.0 && diag > 0.0)) {
            throw inconsistency_error(
                "elliptic conversion requires the diagonal inside (0, 1)");
        }
        return EllipticParams{2.0 * std::acos(diag),
                              0.5 * std::log(lower / -upper)};
    }
    if (!(diag > 1.0)) {
        throw inconsistency_error(
            "hyperbolic conversion requires the diagonal above 1");
    }
    return HyperbolicParams{2.0 * std::acosh(diag),
                            0.5 * std::log(lower / upper)};
}

/// Inverse conversion. sinh(lambda) equals the mean of the off-diagonal
/// entries, which fixes the sign of lambda; theta follows from the diagonal
/// and the off-diagonal difference.
inline WignerParams wigner_from_little(const LittleGroupParams& p) {
    const Mat2 m = little_group_element(p);
    const double sh = (m.m21 + m.m12) / 2.0;
    const double lambda = std::asinh(sh);
    const double ch = std::cosh(lambda);
    const double sin_t = (m.m21 - m.m12) / (2.0 * ch);
    const double cos_t = m.m11 / ch;
    return {lambda, std::atan2(sin_t, cos_t)};
}

/// Exact dictionary from camera-configuration lens cores:
/// sinh(lambda) = x - cosh_rho and sin(theta) = cosh_rho / cosh(lambda),
/// so that wigner_matrix reproduces the core matrix.
inline WignerParams wigner_from_lens(const CoreParams& p) {
    validate(p);
    const double sh = p.x - p.cosh_rho;
    const double lambda = std::asinh(sh);
    return {lambda, std::atan2(p.cosh_rho, p.z - 1.0)};
}

// ---------------------------------------------------------------------------
// the symmetric (d1 = d2) resonator path

/// Chart coordinates of the symmetric path at reduced distance x = d/f > 1:
/// sinh(lambda) = x - 1 and cosh(lambda) sin(theta) = 1 exactly, giving the
/// matrix [[x-1, x-2], [x, x-1]].
///
/// Note the angle is sin(theta) = 1/sqrt(1 + (x-1)^2); the superficially
/// similar 1/sqrt(1 + (1+x)^2) breaks the cosh(lambda) sin(theta) = 1
/// identity and fails to reproduce the matrix (the test suite checks this).
inline WignerParams cavity_wigner(double x) {
    require_finite_param(x, "reduced distance");
    if (!(x > 1.0)) {
        throw configuration_error("symmetric path requires x > 1");
    }
    return {std::asinh(x - 1.0), std::atan2(1.0, x - 1.0)};
}

/// [[x-1, x-2], [x, x-1]]: the symmetric-path matrix in closed form.
inline Mat2 cavity_matrix(double x) {
    require_finite_param(x, "reduced distance");
    if (!(x > 1.0)) {
        throw configuration_error("symmetric path requires x > 1");
    }
    return {x - 1.0, x - 2.0, x, x - 1.0};
}

// ---------------------------------------------------------------------------
// sweeps

struct SweepRecord {
    double x;
    double x1;
    double x2;
    double cosh_rho;
    double z;
    double lambda;
    double theta;
    Regime regime;
    double m11;
    double m12;
    double m21;
    double m22;
};

namespace detail {

inline SweepRecord sweep_record(const LensSystem& s, double eps) {
    const CoreParams p = core_params(s);
    const WignerParams w = wigner_from_lens(p);
    const Mat2 core = core_matrix(p);
    const Mat2 wm = wigner_matrix(w);
    if (max_abs_diff(core, wm) > 1e-9) {
        throw inconsistency_error(
            "sweep record: chart matrix deviates from the core matrix");
    }
    return {p.x,      p.x1,    p.x2,    p.cosh_rho, p.z,     w.lambda,
            w.theta,  classify(p, eps).regime,      core.m11, core.m12,
            core.m21, core.m22};
}

inline void validate_sweep_steps(int steps) {
    if (steps < 2) throw invalid_input("sweep needs at least 2 steps");
}

}  // namespace detail

/// Uniform sweep of d2 at fixed d1 and f. Records are emitted in input
/// order; the whole range must stay in the camera configuration, and the
/// error names the offending endpoint.
inline std::vector<SweepRecord> sweep(double f, double d1, double d2_min,
                                      double d2_max, int steps,
                                      double eps = default_classification_tol) {
    detail::validate_sweep_steps(steps);
    if (!(std::isfinite(d2_min) && std::isfinite(d2_max) && d2_min <= d2_max)) {
        throw invalid_input("sweep requires finite d2-min <= d2-max");
    }
    try {
        require_camera_configuration({d1, d2_min, f});
    } catch (const configuration_error& e) {
        throw configuration_error(std::string("sweep start (d2-min): ") + e.what());
    }
    try {
        require_camera_configuration({d1, d2_max, f});
    } catch (const configuration_error& e) {
        throw configuration_error(std::string("sweep end (d2-max): ") + e.what());
    }
    std::vector<SweepRecord> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        out.push_back(detail::sweep_record({d1, std::lerp(d2_min, d2_max, t), f}, eps));
    }
    return out;
}

/// Uniform sweep along the symmetric path d1 = d2 = d.
inline std::vector<SweepRecord> sweep_cavity(double f, double d_min, double d_max,
                                             int steps,
                                             double eps = default_classification_tol) {
    detail::validate_sweep_steps(steps);
    if (!(std::isfinite(d_min) && std::isfinite(d_max) && d_min <= d_max)) {
        throw invalid_input("sweep requires finite d-min <= d-max");
    }
    try {
        require_camera_configuration({d_min, d_min, f});
    } catch (const configuration_error& e) {
        throw configuration_error(std::string("sweep start (d-min): ") + e.what());
    }
    std::vector<SweepRecord> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        const double d = std::lerp(d_min, d_max, t);
        out.push_back(detail::sweep_record({d, d, f}, eps));
    }
    return out;
}

}  // namespace lenslab
