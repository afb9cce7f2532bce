#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "lenslab/output.hpp"
#include "lenslab/selfcheck.hpp"

using namespace lenslab;
using Catch::Matchers::WithinAbs;
using nlohmann::json;

namespace {

std::string twelve(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// The serialized number must re-parse to the same 12-significant-digit
/// decimal, bit-stable under re-rendering.
void require_roundtrip(const json& j, double original) {
    REQUIRE(j.is_number());
    REQUIRE(twelve(j.get<double>()) == twelve(original));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("12-digit rendering") {
    REQUIRE(g12(0.0) == "0");
    REQUIRE(g12(-0.0) == "0");
    REQUIRE(g12(1.0) == "1");
    REQUIRE(g12(-1.5) == "-1.5");
    REQUIRE(g12(0.1) == "0.1");
    REQUIRE(g12(1e-10) == "1e-10");
    REQUIRE(g12(2.0 / 3.0) == "0.666666666667");
    REQUIRE(g12(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("format names") {
    REQUIRE(parse_format("json") == OutputFormat::Json);
    REQUIRE(parse_format("text") == OutputFormat::Text);
    REQUIRE(parse_format("csv") == OutputFormat::Csv);
    REQUIRE_THROWS_AS(parse_format("yaml"), invalid_input);
}

TEST_CASE("document analysis of the asymmetric system") {
    const OutputDocument doc = analyze({2.0, 3.0, 1.0});
    REQUIRE(doc.classification.regime == Regime::Hyperbolic);
    REQUIRE_THAT(doc.residuals.focal, WithinAbs(-1.0 / 6.0, 1e-14));
    REQUIRE(doc.residuals.z_agreement <= 1e-10);
    REQUIRE(doc.residuals.reconstruction < 1e-10);
    REQUIRE(doc.residuals.determinant < 1e-12);
    REQUIRE(doc.residuals.wigner_vs_core < 1e-9);
    REQUIRE(doc.residuals.little_group_vs_core < 1e-9);
    REQUIRE(doc.eta_ok);
    REQUIRE_THAT(doc.sign, WithinAbs(-1.0 / 6.0, 1e-14));
    REQUIRE(std::holds_alternative<HyperbolicParams>(doc.little_group));
}

TEST_CASE("json document structure and key order") {
    const OutputDocument doc = analyze({2.0, 3.0, 1.0});
    const std::string text = render_json(doc);

    const char* keys[] = {"\"input\"",        "\"core\"",   "\"matrix\"",
                          "\"regime\"",       "\"little_group\"",
                          "\"wigner\"",       "\"residuals\""};
    std::size_t pos = 0;
    for (const char* key : keys) {
        const std::size_t found = text.find(key, pos);
        INFO("key " << key << " must appear after position " << pos);
        REQUIRE(found != std::string::npos);
        pos = found;
    }
    REQUIRE(text.find("\"regime\": \"hyperbolic\"") != std::string::npos);
    REQUIRE(text.find("\"eta_quality\": \"ok\"") != std::string::npos);
}

TEST_CASE("json numbers round-trip at 12 significant digits") {
    const OutputDocument doc = analyze({2.0, 3.0, 1.0});
    const json j = json::parse(render_json(doc));

    require_roundtrip(j["input"]["d1"], doc.input.d1);
    require_roundtrip(j["input"]["d2"], doc.input.d2);
    require_roundtrip(j["input"]["f"], doc.input.f);
    require_roundtrip(j["core"]["x1"], doc.core.x1);
    require_roundtrip(j["core"]["x2"], doc.core.x2);
    require_roundtrip(j["core"]["x"], doc.core.x);
    require_roundtrip(j["core"]["cosh_rho"], doc.core.cosh_rho);
    require_roundtrip(j["core"]["z"], doc.core.z);
    require_roundtrip(j["core"]["b"], doc.core.b);
    REQUIRE(j["matrix"].size() == 4);
    require_roundtrip(j["matrix"][0], doc.matrix.m11);
    require_roundtrip(j["matrix"][1], doc.matrix.m12);
    require_roundtrip(j["matrix"][2], doc.matrix.m21);
    require_roundtrip(j["matrix"][3], doc.matrix.m22);
    REQUIRE(j["regime"] == "hyperbolic");
    REQUIRE(j["little_group"]["regime"] == "hyperbolic");
    const auto& h = std::get<HyperbolicParams>(doc.little_group);
    require_roundtrip(j["little_group"]["chi"], h.chi);
    require_roundtrip(j["little_group"]["eta"], h.eta);
    require_roundtrip(j["wigner"]["lambda"], doc.wigner.lambda);
    require_roundtrip(j["wigner"]["theta"], doc.wigner.theta);
    require_roundtrip(j["wigner"]["sign_quantity"], doc.sign);
    require_roundtrip(j["residuals"]["focal"], doc.residuals.focal);
    require_roundtrip(j["residuals"]["z_agreement"], doc.residuals.z_agreement);
    require_roundtrip(j["residuals"]["reconstruction"],
                      doc.residuals.reconstruction);
    require_roundtrip(j["residuals"]["determinant"], doc.residuals.determinant);
    require_roundtrip(j["residuals"]["wigner_vs_core"],
                      doc.residuals.wigner_vs_core);
    require_roundtrip(j["residuals"]["little_group_vs_core"],
                      doc.residuals.little_group_vs_core);
}

TEST_CASE("little-group json variants") {
    const json ell = json::parse(render_json(analyze({1.5, 1.5, 1.0})));
    REQUIRE(ell["little_group"]["regime"] == "elliptic");
    REQUIRE(ell["little_group"].contains("phi"));
    REQUIRE(ell["little_group"].contains("eta"));
    REQUIRE(ell["little_group"]["eta_quality"] == "ok");
    REQUIRE(ell["regime"] == "elliptic");

    const json par = json::parse(render_json(analyze({2.0, 2.0, 1.0})));
    REQUIRE(par["little_group"]["regime"] == "parabolic");
    REQUIRE(par["little_group"].contains("u"));
    REQUIRE_FALSE(par["little_group"].contains("eta_quality"));
    require_roundtrip(par["little_group"]["u"], 2.0);
    require_roundtrip(par["residuals"]["focal"], 0.0);

    // just off focal: classification flips but eta digits are unreliable
    const json near = json::parse(render_json(analyze({2.0, 2.0 + 1e-8, 1.0})));
    REQUIRE(near["little_group"]["regime"] == "hyperbolic");
    REQUIRE(near["little_group"]["eta_quality"] == "degraded");
}

TEST_CASE("text rendering carries the headline numbers") {
    const std::string text = render_text(analyze({2.0, 3.0, 1.0}));
    REQUIRE(text.find("regime: hyperbolic") != std::string::npos);
    REQUIRE(text.find("d1 = 2") != std::string::npos);
    REQUIRE(text.find("hyperbolic: chi = 1.76274717404") != std::string::npos);
    REQUIRE(text.find("lambda = 1.15464803785") != std::string::npos);
    REQUIRE(text.find("residuals:") != std::string::npos);
}

TEST_CASE("csv rendering") {
    const std::vector<SweepRecord> records = sweep(1.0, 2.0, 1.8, 2.3, 6);
    const std::string csv = render_csv(records);
    const std::vector<std::string> lines = split(csv, '\n');
    REQUIRE(lines.front() ==
            "x,x1,x2,cosh_rho,z,lambda,theta,regime,m11,m12,m21,m22");
    REQUIRE(lines.size() == 8);  // header + 6 rows + trailing newline
    REQUIRE(lines.back().empty());

    for (int i = 0; i < 6; ++i) {
        const std::vector<std::string> cells = split(lines[i + 1], ',');
        REQUIRE(cells.size() == 12);
        REQUIRE(twelve(std::strtod(cells[0].c_str(), nullptr)) ==
                twelve(records[i].x));
        REQUIRE(twelve(std::strtod(cells[5].c_str(), nullptr)) ==
                twelve(records[i].lambda));
        REQUIRE(twelve(std::strtod(cells[6].c_str(), nullptr)) ==
                twelve(records[i].theta));
        REQUIRE(cells[7] == to_string(records[i].regime));
        REQUIRE(twelve(std::strtod(cells[11].c_str(), nullptr)) ==
                twelve(records[i].m22));
    }
    // the parabolic crossing row serializes its vanishing entry as plain 0
    REQUIRE(split(lines[3], ',')[9] == "0");
    REQUIRE(split(lines[3], ',')[7] == "parabolic");
}

TEST_CASE("symmetric-path reports") {
    const CavityReport direct = analyze_cavity_x(2.0);
    REQUIRE_FALSE(direct.from_distances);
    REQUIRE(direct.regime == Regime::Parabolic);
    REQUIRE(direct.matrix == Mat2{1.0, 0.0, 2.0, 1.0});
    REQUIRE(std::fabs(direct.identity_residual) < 1e-12);
    REQUIRE(direct.matrix_residual < 1e-9);
    REQUIRE(direct.det_residual < 1e-12);

    const json j = json::parse(render_json(direct));
    REQUIRE(j["input"]["x"] == 2.0);
    REQUIRE_FALSE(j["input"].contains("d"));
    REQUIRE(j["matrix"] == json({1.0, 0.0, 2.0, 1.0}));
    REQUIRE(j["regime"] == "parabolic");

    const CavityReport from_d = analyze_cavity_distance(3.0, 2.0);
    REQUIRE(from_d.from_distances);
    REQUIRE_THAT(from_d.x, WithinAbs(1.5, 1e-15));
    REQUIRE(from_d.regime == Regime::Elliptic);
    const json k = json::parse(render_json(from_d));
    REQUIRE(k["input"]["d"] == 3.0);
    REQUIRE(k["input"]["f"] == 2.0);
    require_roundtrip(k["input"]["x"], 1.5);
    require_roundtrip(k["wigner"]["lambda"], from_d.wigner.lambda);

    const std::string text = render_text(from_d);
    REQUIRE(text.find("x = 1.5") != std::string::npos);
    REQUIRE(text.find("regime: elliptic") != std::string::npos);

    REQUIRE_THROWS_AS(analyze_cavity_x(1.0), configuration_error);
    REQUIRE_THROWS_AS(analyze_cavity_distance(1.0, 2.0), configuration_error);
    REQUIRE_THROWS_AS(analyze_cavity_distance(3.0, 0.0), invalid_input);
}

TEST_CASE("hyperbolic path far out") {
    const CavityReport wide = analyze_cavity_x(5.0);
    REQUIRE(wide.regime == Regime::Hyperbolic);
    REQUIRE(wide.matrix == Mat2{4.0, 3.0, 5.0, 4.0});
}

TEST_CASE("format dispatch") {
    const OutputDocument doc = analyze({2.0, 3.0, 1.0});
    REQUIRE(render_output(doc, OutputFormat::Json) == render_json(doc));
    REQUIRE(render_output(doc, OutputFormat::Text) == render_text(doc));
    REQUIRE_THROWS_AS(render_output(doc, OutputFormat::Csv), invalid_input);

    const CavityReport report = analyze_cavity_x(2.0);
    REQUIRE(render_output(report, OutputFormat::Json) == render_json(report));
    REQUIRE(render_output(report, OutputFormat::Text) == render_text(report));
    REQUIRE_THROWS_AS(render_output(report, OutputFormat::Csv), invalid_input);
}

TEST_CASE("self-check battery passes and is deterministic") {
    const selfcheck::Options opt{42, 200, 1e-10};
    const std::vector<selfcheck::CheckResult> results = selfcheck::run_all(opt);
    REQUIRE(results.size() == 9);
    for (const selfcheck::CheckResult& r : results) {
        INFO(selfcheck::format_result(r));
        REQUIRE(r.passed);
    }
    REQUIRE(results[0].name == "unimodularity");
    REQUIRE(results[8].name == "contraction-limit");
    REQUIRE(selfcheck::format_result(results[0]).find("[PASS]") == 0);

    // same seed, same numbers; a different seed still passes
    const std::vector<selfcheck::CheckResult> again = selfcheck::run_all(opt);
    for (std::size_t i = 0; i < results.size(); ++i) {
        REQUIRE(results[i].worst == again[i].worst);
    }
    for (const selfcheck::CheckResult& r :
         selfcheck::run_all({7, 200, 1e-10})) {
        INFO(selfcheck::format_result(r));
        REQUIRE(r.passed);
    }

    REQUIRE_THROWS_AS(selfcheck::run_all({42, 0, 1e-10}), invalid_input);
    REQUIRE_THROWS_AS(selfcheck::run_all({42, 100, -1.0}), invalid_input);
}
