#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lenslab/contraction.hpp"
#include "lenslab/little_group.hpp"
#include "lenslab/mat2.hpp"
#include "lenslab/optics.hpp"
#include "lenslab/output.hpp"

// Deterministic property checks over randomized inputs. Each check reports
// the worst measured quantity against its limit; nothing is clamped or
// retried. The same functions back the command-line verifier and the
// acceptance runner, which differ only in case counts.

namespace lenslab::selfcheck {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;   // headline measured quantity
    double limit = 0.0;   // the bound `worst` must stay below
    long cases = 0;
    double seconds = 0.0;
    std::string detail;   // secondary measurements, if any
};

struct Options {
    std::uint64_t seed = 42;
    int cases = 1000;
    double tol = default_classification_tol;  // classification band
};

namespace detail {

class Stopwatch {
  public:
    double seconds() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(now - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

/// Random camera-configuration system with f = 1, d log-uniform in
/// [1.01, 10].
inline LensSystem random_camera(std::mt19937_64& rng) {
    return {log_uniform(rng, 1.01, 10.0), log_uniform(rng, 1.01, 10.0), 1.0};
}

inline std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// individual checks

/// |det - 1| for the raw, core, normal-form, and chart matrices.
inline CheckResult check_unimodularity(std::uint64_t seed, int cases) {
    detail::Stopwatch clock;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
        const LensSystem s = detail::random_camera(rng);
        const CoreParams p = core_params(s);
        const Mat2 core = core_matrix(p);
        const Regime regime = classify(p).regime;
        const Mat2 element = little_group_element(extract_params(core, regime));
        const Mat2 chart = wigner_matrix(wigner_from_lens(p));
        worst = std::max({worst, std::fabs(one_lens(s).det() - 1.0),
                          std::fabs(core.det() - 1.0),
                          std::fabs(element.det() - 1.0),
                          std::fabs(chart.det() - 1.0)});
    }
    const double limit = 1e-12;
    return {"unimodularity", worst < limit, worst, limit, cases,
            clock.seconds(), ""};
}

/// Rebuild the raw matrix from the scale decomposition, and the negated
/// core from its two-sided b renormalization.
inline CheckResult check_decomposition_roundtrip(std::uint64_t seed, int cases) {
    detail::Stopwatch clock;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
        const LensSystem s = detail::random_camera(rng);
        const Decomposition d = decompose(s);
        const Mat2 rebuilt = d.outer_scale * (-d.negated_core) * d.inner_scale;
        worst = std::max(worst, relative_diff(rebuilt, one_lens(s)));

        const CoreParams p = core_params(s);
        const Mat2 sandwich = d.b_scale * core_matrix(p) * d.b_scale;
        worst = std::max(worst, relative_diff(sandwich, d.negated_core));
    }
    const double limit = 1e-10;
    return {"decomposition-roundtrip", worst < limit, worst, limit, cases,
            clock.seconds(), ""};
}

/// The focal-sum residual, the sign of x - 2 cosh_rho, and the sign of the
/// raw upper-right entry must name the same regime, and the extracted
/// normal-form kind must match. Includes constructed exactly-focal systems.
inline CheckResult check_regime_equivalence(std::uint64_t seed, int cases,
                                            int focal_cases,
                                            double tol = default_classification_tol) {
    detail::Stopwatch clock;
    std::mt19937_64 rng(seed);
    long disagreements = 0;

    const auto examine = [&](const LensSystem& s, bool must_be_parabolic) {
        const CoreParams p = core_params(s);
        const Regime a = classify(p, tol).regime;
        const Regime b = classify_by_focal(p, tol);
        const double upper_right = focal_check(s, tol).upper_right;
        const double band = tol * s.f * p.x;
        const Regime c = upper_right > band    ? Regime::Elliptic
                         : upper_right < -band ? Regime::Hyperbolic
                                               : Regime::Parabolic;
        const Regime d = regime_of(extract_params(core_matrix(p), a));
        if (a != b || a != c || a != d) ++disagreements;
        if (must_be_parabolic && a != Regime::Parabolic) ++disagreements;
    };

    for (int i = 0; i < cases; ++i) {
        examine(detail::random_camera(rng), false);
    }
    for (int i = 0; i < focal_cases; ++i) {
        const double d1 = detail::log_uniform(rng, 1.02, 10.0);
        examine({d1, d1 / (d1 - 1.0), 1.0}, true);
    }
    return {"regime-equivalence",
            disagreements == 0,
            static_cast<double>(disagreements),
            1.0,
            cases + focal_cases,
            clock.seconds(),
            "disagreements"};
}

/// Chart matrix vs normal form of the converted parameters over a lambda
/// by theta grid covering elliptic, parabolic, and hyperbolic points.
inline CheckResult check_representation_equality(int grid = 100) {
    detail::Stopwatch clock;
    double worst = 0.0;
    long counts[3] = {0, 0, 0};
    for (int i = 0; i < grid; ++i) {
        const double lambda = -0.4 + 3.4 * i / (grid - 1);
        const double band_sin = std::tanh(lambda);
        for (int j = 0; j < grid; ++j) {
            double s = 0.55 + (0.995 - 0.55) * j / (grid - 1);
            if (j == grid / 2 && band_sin > 0.56 && band_sin < 0.99) {
                s = band_sin;  // land exactly on the parabolic band
            }
            const WignerParams w{lambda, std::asin(s)};
            const LittleGroupParams params = little_from_wigner(w);
            ++counts[static_cast<int>(regime_of(params))];
            worst = std::max(
                worst, max_abs_diff(wigner_matrix(w),
                                    little_group_element(params)));
        }
    }
    const double limit = 1e-9;
    const bool spans = counts[0] > 0 && counts[1] > 0 && counts[2] > 0;
    return {"representation-equality",
            worst < limit && spans,
            worst,
            limit,
            static_cast<long>(grid) * grid,
            clock.seconds(),
            "elliptic " + std::to_string(counts[0]) + ", parabolic " +
                std::to_string(counts[1]) + ", hyperbolic " +
                std::to_string(counts[2])};
}

/// The lens-to-chart dictionary reproduces the core matrix entrywise.
inline CheckResult check_lens_dictionary(std::uint64_t seed, int cases) {
    detail::Stopwatch clock;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
        const CoreParams p = core_params(detail::random_camera(rng));
        worst = std::max(worst, max_abs_diff(wigner_matrix(wigner_from_lens(p)),
                                             core_matrix(p)));
    }
    const double limit = 1e-9;
    return {"lens-dictionary", worst < limit, worst, limit, cases,
            clock.seconds(), ""};
}

namespace detail {

inline double max_adjacent_jump(const std::vector<SweepRecord>& records) {
    double jump = 0.0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        jump = std::max({jump,
                         std::fabs(records[i].lambda - records[i - 1].lambda),
                         std::fabs(records[i].theta - records[i - 1].theta)});
    }
    return jump;
}

inline double record_sign_quantity(const SweepRecord& r) {
    return sign_quantity(WignerParams{r.lambda, r.theta});
}

inline long count_sign_crossings(const std::vector<SweepRecord>& records,
                                 double zero_band) {
    long crossings = 0;
    int prev = 0;
    for (const SweepRecord& r : records) {
        const double q = record_sign_quantity(r);
        if (std::fabs(q) <= zero_band) continue;
        const int sign = q > 0.0 ? 1 : -1;
        if (prev != 0 && sign != prev) ++crossings;
        prev = sign;
    }
    return crossings;
}

inline double record_eta(const SweepRecord& r) {
    return 0.5 * std::log(r.m21 / std::fabs(r.m12));
}

}  // namespace detail

/// Across the parabolic crossing of the sweep f=1, d1=2, d2 in [1.8, 2.2]:
/// the largest adjacent jump in (lambda, theta) shrinks linearly with the
/// step size, the sign quantity changes sign exactly once, and the
/// asymmetry parameter grows monotonically into the crossing on both sides.
inline CheckResult check_analytic_contraction(double tol = default_classification_tol) {
    detail::Stopwatch clock;
    constexpr double zero_band = 1e-14;
    constexpr double eta_window = 1e-4;

    const std::vector<SweepRecord> coarse = sweep(1.0, 2.0, 1.8, 2.2, 41, tol);
    const std::vector<SweepRecord> medium = sweep(1.0, 2.0, 1.8, 2.2, 401, tol);
    const std::vector<SweepRecord> fine = sweep(1.0, 2.0, 1.8, 2.2, 4001, tol);

    const double r1 = detail::max_adjacent_jump(coarse) / detail::max_adjacent_jump(medium);
    const double r2 = detail::max_adjacent_jump(medium) / detail::max_adjacent_jump(fine);
    // both refinements are 10x, so both ratios should sit near 10
    const double deviation =
        std::max({r1 / 10.0, 10.0 / r1, r2 / 10.0, 10.0 / r2});

    const long c1 = detail::count_sign_crossings(coarse, zero_band);
    const long c2 = detail::count_sign_crossings(medium, zero_band);
    const long c3 = detail::count_sign_crossings(fine, zero_band);

    // in the |sign| < 1e-4 window around the crossing, eta must rise
    // strictly toward the crossing on both sides
    std::vector<double> before;  // sign > 0, ordered toward the crossing
    std::vector<double> after;   // sign < 0, ordered away from the crossing
    for (const SweepRecord& r : fine) {
        const double q = detail::record_sign_quantity(r);
        if (std::fabs(q) <= zero_band || std::fabs(q) >= eta_window) continue;
        (q > 0.0 ? before : after).push_back(detail::record_eta(r));
    }
    bool eta_ok = before.size() >= 2 && after.size() >= 2;
    for (std::size_t i = 1; i < before.size() && eta_ok; ++i) {
        eta_ok = before[i] > before[i - 1];
    }
    for (std::size_t i = 1; i < after.size() && eta_ok; ++i) {
        eta_ok = after[i] < after[i - 1];
    }

    const double limit = 3.0;
    const bool passed =
        deviation < limit && c1 == 1 && c2 == 1 && c3 == 1 && eta_ok;
    return {"analytic-contraction",
            passed,
            deviation,
            limit,
            static_cast<long>(coarse.size() + medium.size() + fine.size()),
            clock.seconds(),
            "jump ratios " + detail::g(r1) + ", " + detail::g(r2) +
                "; crossings " + std::to_string(c1) + "/" + std::to_string(c2) +
                "/" + std::to_string(c3) + "; eta window " +
                std::to_string(before.size()) + "+" +
                std::to_string(after.size())};
}

/// cosh(lambda) sin(theta) = 1 along the symmetric path, the closed-form
/// matrix matches the chart, and the sign-flipped angle variant visibly
/// breaks the matrix (guarding against that transcription).
inline CheckResult check_cavity_identity(int cases) {
    detail::Stopwatch clock;
    double worst = 0.0;
    double matrix_worst = 0.0;
    for (int k = 0; k < cases; ++k) {
        const double x = 1.0 + 9.0 * (k + 1) / cases;
        const WignerParams w = cavity_wigner(x);
        worst = std::max(
            worst, std::fabs(std::cosh(w.lambda) * std::sin(w.theta) - 1.0));
        matrix_worst = std::max(
            matrix_worst, max_abs_diff(wigner_matrix(w), cavity_matrix(x)));
    }

    const double x = 1.5;
    const double bad_sin = 1.0 / std::sqrt(1.0 + (1.0 + x) * (1.0 + x));
    const WignerParams bad{std::asinh(x - 1.0), std::asin(bad_sin)};
    const double bad_diff = max_abs_diff(wigner_matrix(bad), cavity_matrix(x));

    const double limit = 1e-12;
    const bool passed = worst < limit && matrix_worst < 1e-9 && bad_diff > 1e-2;
    return {"cavity-identity",
            passed,
            worst,
            limit,
            cases,
            clock.seconds(),
            "matrix " + detail::g(matrix_worst) + " (limit 1e-9); variant off by " +
                detail::g(bad_diff) + " (must exceed 1e-2)"};
}

/// Stabilizer residuals of the three normal forms against their fixed
/// vectors, plus form invariance of lower shears under z-boost conjugation.
inline CheckResult check_little_group_invariance(std::uint64_t seed, int cases) {
    detail::Stopwatch clock;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    double form_worst = 0.0;
    double scaling_worst = 0.0;
    for (int i = 0; i < cases; ++i) {
        const double eta = detail::uniform(rng, -3.0, 3.0);
        const double m = detail::log_uniform(rng, 0.1, 10.0);

        const double phi = detail::uniform(rng, 0.05, 3.09);
        worst = std::max(
            worst, invariance_residual(
                       little_group_element(EllipticParams{phi, eta}),
                       four_momentum(MomentumKind::MassiveMoving, m, eta)));

        const double chi = detail::uniform(rng, 0.05, 6.0);
        const ThreeVector tachyonic = vector_action(
            boost_z(-eta), four_momentum(MomentumKind::Spacelike, m));
        worst = std::max(
            worst, invariance_residual(
                       little_group_element(HyperbolicParams{chi, eta}),
                       tachyonic));

        const double u = detail::uniform(rng, -5.0, 5.0);
        const double omega = detail::log_uniform(rng, 0.1, 10.0);
        worst = std::max(
            worst, invariance_residual(
                       parabolic_lower(u),
                       four_momentum(MomentumKind::Lightlike, omega)));
        worst = std::max(worst, invariance_residual(parabolic_upper(u),
                                                    {omega, omega, 0.0}));

        // z-boost conjugation keeps the lower-shear form and rescales its
        // strength by e^eta
        const Mat2 conj = boost_z(-eta) * parabolic_lower(u) * boost_z(eta);
        form_worst = std::max({form_worst, std::fabs(conj.m12),
                               std::fabs(conj.m11 - 1.0),
                               std::fabs(conj.m22 - 1.0)});
        const double expected = u * std::exp(eta);
        scaling_worst = std::max(scaling_worst,
                                 std::fabs(conj.m21 - expected) /
                                     std::fmax(1.0, std::fabs(expected)));
    }
    const double limit = 1e-10;
    const bool passed =
        worst < limit && form_worst < 1e-12 && scaling_worst < 1e-12;
    return {"little-group-invariance",
            passed,
            worst,
            limit,
            cases,
            clock.seconds(),
            "shear form " + detail::g(form_worst) + ", strength scaling " +
                detail::g(scaling_worst) + " (limits 1e-12)"};
}

/// Rotation-like elements with e^eta sin(phi/2) pinned at 2 approach the
/// lower shear of strength 2 as eta grows.
inline CheckResult check_contraction_limit() {
    detail::Stopwatch clock;
    const double c = 2.0;
    const Mat2 target = parabolic_lower(c);
    std::string detail_txt = "errors at eta 6, 8, 10:";
    double at_ten = 0.0;
    for (const double eta : {6.0, 8.0, 10.0}) {
        const double phi = 2.0 * std::asin(c * std::exp(-eta));
        const double err = max_abs_diff(
            little_group_element(EllipticParams{phi, eta}), target);
        detail_txt += " " + detail::g(err);
        if (eta == 10.0) at_ten = err;
    }
    const double limit = 1e-8;
    return {"contraction-limit", at_ten < limit, at_ten, limit, 3,
            clock.seconds(), detail_txt};
}

// ---------------------------------------------------------------------------
// the full battery

inline std::vector<CheckResult> run_all(const Options& opt) {
    if (opt.cases < 1) throw invalid_input("case count must be positive");
    if (!(std::isfinite(opt.tol) && opt.tol > 0.0)) {
        throw invalid_input("classification tolerance must be positive");
    }
    std::vector<CheckResult> out;
    out.push_back(check_unimodularity(opt.seed, opt.cases));
    out.push_back(check_decomposition_roundtrip(opt.seed, opt.cases));
    out.push_back(check_regime_equivalence(opt.seed, opt.cases,
                                           std::max(1, opt.cases / 100),
                                           opt.tol));
    out.push_back(check_representation_equality());
    out.push_back(check_lens_dictionary(opt.seed, opt.cases));
    out.push_back(check_analytic_contraction(opt.tol));
    out.push_back(check_cavity_identity(opt.cases));
    out.push_back(check_little_group_invariance(opt.seed, opt.cases));
    out.push_back(check_contraction_limit());
    return out;
}

inline std::string format_result(const CheckResult& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%s] %-26s worst %-11.3g limit %-8.3g %6ld cases  %.3fs",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.limit,
                  r.cases, r.seconds);
    std::string line = buf;
    if (!r.detail.empty()) line += "  (" + r.detail + ")";
    return line;
}

}  // namespace lenslab::selfcheck
