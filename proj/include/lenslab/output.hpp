#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lenslab/contraction.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/little_group.hpp"
#include "lenslab/mat2.hpp"
#include "lenslab/optics.hpp"

// Analysis documents and their serialized forms. All numbers are emitted
// with 12 significant digits; reported residuals are measured, never
// assumed zero.

namespace lenslab {

struct ResidualReport {
    double focal;                 // f*(1/d1 + 1/d2 - 1/f)
    double z_agreement;           // |z - z_alt| between the two z routes
    double reconstruction;        // scale sandwich vs raw matrix, relative
    double determinant;           // worst |det - 1| across produced matrices
    double wigner_vs_core;        // chart matrix vs core matrix, max-norm
    double little_group_vs_core;  // normal form vs core matrix, max-norm
};

struct OutputDocument {
    LensSystem input;
    CoreParams core;
    Mat2 matrix;  // the core matrix
    RegimeClassification classification;
    LittleGroupParams little_group;
    bool eta_ok;
    WignerParams wigner;
    double sign;
    ResidualReport residuals;
};

struct CavityReport {
    bool from_distances;
    double d;  // meaningful only when from_distances
    double f;  // meaningful only when from_distances
    double x;
    Regime regime;
    WignerParams wigner;
    Mat2 matrix;
    double identity_residual;  // cosh(lambda) sin(theta) - 1
    double matrix_residual;    // chart matrix vs closed form, max-norm
    double det_residual;       // |det - 1|
};

enum class OutputFormat { Json, Text, Csv };

inline OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "text") return OutputFormat::Text;
    if (name == "csv") return OutputFormat::Csv;
    throw invalid_input("unknown output format: " + name);
}

// ---------------------------------------------------------------------------
// analysis

inline OutputDocument analyze(const LensSystem& s,
                              double eps = default_classification_tol) {
    OutputDocument doc;
    doc.input = s;
    doc.core = core_params(s);
    doc.matrix = core_matrix(doc.core);
    doc.classification = classify(doc.core, eps);
    doc.little_group = extract_params(doc.matrix, doc.classification.regime);
    doc.wigner = wigner_from_lens(doc.core);
    doc.sign = sign_quantity(doc.wigner);
    doc.eta_ok = eta_well_conditioned(doc.wigner);

    const Mat2 raw = one_lens(s);
    const Decomposition dec = decompose(s);
    const Mat2 rebuilt = dec.outer_scale * (-dec.negated_core) * dec.inner_scale;
    const Mat2 element = little_group_element(doc.little_group);
    const Mat2 chart = wigner_matrix(doc.wigner);

    const double radicand = std::fmax(
        0.0, doc.core.x * doc.core.x - 2.0 * doc.core.x * doc.core.cosh_rho + 1.0);

    doc.residuals.focal = focal_check(s, eps).residual;
    doc.residuals.z_agreement =
        std::fabs(doc.core.z - (1.0 + std::sqrt(radicand)));
    doc.residuals.reconstruction = relative_diff(rebuilt, raw);
    doc.residuals.determinant =
        std::max({std::fabs(raw.det() - 1.0), std::fabs(doc.matrix.det() - 1.0),
                  std::fabs(element.det() - 1.0), std::fabs(chart.det() - 1.0)});
    doc.residuals.wigner_vs_core = max_abs_diff(chart, doc.matrix);
    doc.residuals.little_group_vs_core = max_abs_diff(element, doc.matrix);
    return doc;
}

inline CavityReport analyze_cavity_x(double x,
                                     double eps = default_classification_tol) {
    CavityReport r;
    r.from_distances = false;
    r.d = 0.0;
    r.f = 0.0;
    r.x = x;
    r.wigner = cavity_wigner(x);
    r.matrix = cavity_matrix(x);
    const double residual = x - 2.0;  // x - 2 cosh_rho with cosh_rho = 1
    r.regime = residual < -eps   ? Regime::Elliptic
               : residual > eps ? Regime::Hyperbolic
                                : Regime::Parabolic;
    r.identity_residual =
        std::cosh(r.wigner.lambda) * std::sin(r.wigner.theta) - 1.0;
    r.matrix_residual = max_abs_diff(wigner_matrix(r.wigner), r.matrix);
    r.det_residual = std::fabs(r.matrix.det() - 1.0);
    return r;
}

inline CavityReport analyze_cavity_distance(double d, double f,
                                            double eps = default_classification_tol) {
    validate_focal_length(f);
    require_finite_param(d, "mirror distance");
    CavityReport r = analyze_cavity_x(d / f, eps);
    r.from_distances = true;
    r.d = d;
    r.f = f;
    return r;
}

// ---------------------------------------------------------------------------
// serialization

/// 12-significant-digit decimal form; reparsing recovers the rounded value.
inline std::string g12(double v) {
    if (v == 0.0) return "0";  // normalize negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

inline void append_kv(std::string& out, const char* key, const std::string& v,
                      bool quote, bool last = false) {
    out += '"';
    out += key;
    out += "\": ";
    if (quote) out += '"';
    out += v;
    if (quote) out += '"';
    if (!last) out += ", ";
}

inline std::string json_matrix(const Mat2& m) {
    return "[" + g12(m.m11) + ", " + g12(m.m12) + ", " + g12(m.m21) + ", " +
           g12(m.m22) + "]";
}

inline std::string json_little_group(const LittleGroupParams& p, bool eta_ok) {
    std::string out = "{";
    if (const auto* e = std::get_if<EllipticParams>(&p)) {
        append_kv(out, "regime", "elliptic", true);
        append_kv(out, "phi", g12(e->phi), false);
        append_kv(out, "eta", g12(e->eta), false);
        append_kv(out, "eta_quality", eta_ok ? "ok" : "degraded", true, true);
    } else if (const auto* h = std::get_if<HyperbolicParams>(&p)) {
        append_kv(out, "regime", "hyperbolic", true);
        append_kv(out, "chi", g12(h->chi), false);
        append_kv(out, "eta", g12(h->eta), false);
        append_kv(out, "eta_quality", eta_ok ? "ok" : "degraded", true, true);
    } else {
        append_kv(out, "regime", "parabolic", true);
        append_kv(out, "u", g12(std::get<ParabolicParams>(p).u), false, true);
    }
    return out + "}";
}

}  // namespace detail

inline std::string render_json(const OutputDocument& doc) {
    using detail::append_kv;
    std::string out = "{\n  \"input\": {";
    append_kv(out, "d1", g12(doc.input.d1), false);
    append_kv(out, "d2", g12(doc.input.d2), false);
    append_kv(out, "f", g12(doc.input.f), false, true);
    out += "},\n  \"core\": {";
    append_kv(out, "x1", g12(doc.core.x1), false);
    append_kv(out, "x2", g12(doc.core.x2), false);
    append_kv(out, "x", g12(doc.core.x), false);
    append_kv(out, "cosh_rho", g12(doc.core.cosh_rho), false);
    append_kv(out, "z", g12(doc.core.z), false);
    append_kv(out, "b", g12(doc.core.b), false, true);
    out += "},\n  \"matrix\": " + detail::json_matrix(doc.matrix);
    out += ",\n  \"regime\": \"" + std::string(to_string(doc.classification.regime)) + "\"";
    out += ",\n  \"little_group\": " +
           detail::json_little_group(doc.little_group, doc.eta_ok);
    out += ",\n  \"wigner\": {";
    append_kv(out, "lambda", g12(doc.wigner.lambda), false);
    append_kv(out, "theta", g12(doc.wigner.theta), false);
    append_kv(out, "sign_quantity", g12(doc.sign), false, true);
    out += "},\n  \"residuals\": {";
    append_kv(out, "focal", g12(doc.residuals.focal), false);
    append_kv(out, "z_agreement", g12(doc.residuals.z_agreement), false);
    append_kv(out, "reconstruction", g12(doc.residuals.reconstruction), false);
    append_kv(out, "determinant", g12(doc.residuals.determinant), false);
    append_kv(out, "wigner_vs_core", g12(doc.residuals.wigner_vs_core), false);
    append_kv(out, "little_group_vs_core",
              g12(doc.residuals.little_group_vs_core), false, true);
    out += "}\n}\n";
    return out;
}

inline std::string render_json(const CavityReport& r) {
    using detail::append_kv;
    std::string out = "{\n  \"input\": {";
    if (r.from_distances) {
        append_kv(out, "d", g12(r.d), false);
        append_kv(out, "f", g12(r.f), false);
    }
    append_kv(out, "x", g12(r.x), false, true);
    out += "},\n  \"regime\": \"" + std::string(to_string(r.regime)) + "\"";
    out += ",\n  \"matrix\": " + detail::json_matrix(r.matrix);
    out += ",\n  \"wigner\": {";
    append_kv(out, "lambda", g12(r.wigner.lambda), false);
    append_kv(out, "theta", g12(r.wigner.theta), false, true);
    out += "},\n  \"residuals\": {";
    append_kv(out, "identity", g12(r.identity_residual), false);
    append_kv(out, "matrix", g12(r.matrix_residual), false);
    append_kv(out, "determinant", g12(r.det_residual), false, true);
    out += "}\n}\n";
    return out;
}

namespace detail {

inline std::string text_matrix(const Mat2& m) {
    return "  [ " + g12(m.m11) + "  " + g12(m.m12) + " ]\n  [ " + g12(m.m21) +
           "  " + g12(m.m22) + " ]\n";
}

inline std::string text_little_group(const LittleGroupParams& p, bool eta_ok) {
    if (const auto* e = std::get_if<EllipticParams>(&p)) {
        return "  elliptic: phi = " + g12(e->phi) + "  eta = " + g12(e->eta) +
               "  (eta " + (eta_ok ? "ok" : "degraded") + ")\n";
    }
    if (const auto* h = std::get_if<HyperbolicParams>(&p)) {
        return "  hyperbolic: chi = " + g12(h->chi) + "  eta = " + g12(h->eta) +
               "  (eta " + (eta_ok ? "ok" : "degraded") + ")\n";
    }
    return "  parabolic: u = " + g12(std::get<ParabolicParams>(p).u) + "\n";
}

}  // namespace detail

inline std::string render_text(const OutputDocument& doc) {
    std::string out;
    out += "one-lens system: d1 = " + g12(doc.input.d1) +
           "  d2 = " + g12(doc.input.d2) + "  f = " + g12(doc.input.f) + "\n";
    out += "regime: " + std::string(to_string(doc.classification.regime)) +
           "  (x - 2 cosh_rho = " + g12(doc.classification.residual) + ")\n";
    out += "core: x1 = " + g12(doc.core.x1) + "  x2 = " + g12(doc.core.x2) +
           "  x = " + g12(doc.core.x) + "  cosh_rho = " + g12(doc.core.cosh_rho) +
           "  z = " + g12(doc.core.z) + "  b = " + g12(doc.core.b) + "\n";
    out += "core matrix:\n" + detail::text_matrix(doc.matrix);
    out += "little group:\n" + detail::text_little_group(doc.little_group, doc.eta_ok);
    out += "chart: lambda = " + g12(doc.wigner.lambda) +
           "  theta = " + g12(doc.wigner.theta) +
           "  sign_quantity = " + g12(doc.sign) + "\n";
    out += "residuals: focal = " + g12(doc.residuals.focal) +
           "  z_agreement = " + g12(doc.residuals.z_agreement) +
           "  reconstruction = " + g12(doc.residuals.reconstruction) +
           "  determinant = " + g12(doc.residuals.determinant) + "\n";
    return out;
}

inline std::string render_text(const CavityReport& r) {
    std::string out;
    out += "symmetric path: x = " + g12(r.x);
    if (r.from_distances) {
        out += "  (d = " + g12(r.d) + ", f = " + g12(r.f) + ")";
    }
    out += "\nregime: " + std::string(to_string(r.regime)) + "\n";
    out += "chart: lambda = " + g12(r.wigner.lambda) +
           "  theta = " + g12(r.wigner.theta) + "\n";
    out += "matrix:\n" + detail::text_matrix(r.matrix);
    out += "residuals: identity = " + g12(r.identity_residual) +
           "  matrix = " + g12(r.matrix_residual) +
           "  determinant = " + g12(r.det_residual) + "\n";
    return out;
}

inline constexpr const char* sweep_csv_header =
    "x,x1,x2,cosh_rho,z,lambda,theta,regime,m11,m12,m21,m22";

inline std::string render_csv(const std::vector<SweepRecord>& records) {
    std::string out = sweep_csv_header;
    out += '\n';
    for (const SweepRecord& r : records) {
        out += g12(r.x) + "," + g12(r.x1) + "," + g12(r.x2) + "," +
               g12(r.cosh_rho) + "," + g12(r.z) + "," + g12(r.lambda) + "," +
               g12(r.theta) + "," + to_string(r.regime) + "," + g12(r.m11) +
               "," + g12(r.m12) + "," + g12(r.m21) + "," + g12(r.m22) + "\n";
    }
    return out;
}

inline std::string render_output(const OutputDocument& doc, OutputFormat fmt) {
    switch (fmt) {
        case OutputFormat::Json: return render_json(doc);
        case OutputFormat::Text: return render_text(doc);
        case OutputFormat::Csv:
            throw invalid_input("csv rendering applies to sweep tables only");
    }
    throw invalid_input("unknown output format");
}

inline std::string render_output(const CavityReport& r, OutputFormat fmt) {
    switch (fmt) {
        case OutputFormat::Json: return render_json(r);
        case OutputFormat::Text: return render_text(r);
        case OutputFormat::Csv:
            throw invalid_input("csv rendering applies to sweep tables only");
    }
    throw invalid_input("unknown output format");
}

}  // namespace lenslab
