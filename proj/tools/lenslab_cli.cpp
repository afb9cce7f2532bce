// Command-line front end: compose one-lens systems, classify and extract
// parameters, sweep across the focal crossing, analyze the symmetric path,
// and run the self-check battery.
//
// Exit codes: 0 success, 1 consistency-check failure, 2 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lenslab/lenslab.hpp"

namespace {

/// Flag > LENSLAB_TOL environment variable > built-in default.
double resolve_tolerance(bool flag_given, double flag_value) {
    if (flag_given) {
        if (!(std::isfinite(flag_value) && flag_value > 0.0)) {
            throw lenslab::invalid_input("--tol must be positive and finite");
        }
        return flag_value;
    }
    if (const char* env = std::getenv("LENSLAB_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(std::isfinite(v) && v > 0.0)) {
            throw lenslab::invalid_input(
                "LENSLAB_TOL must be a positive finite number, got: " +
                std::string(env));
        }
        return v;
    }
    return lenslab::default_classification_tol;
}

int run_document(double d1, double d2, double f, double tol,
                 const std::string& format) {
    const lenslab::OutputDocument doc = lenslab::analyze({d1, d2, f}, tol);
    std::cout << lenslab::render_output(doc, lenslab::parse_format(format));
    return 0;
}

int run_sweep(double f, double d1, double d2_min, double d2_max, int steps,
              double tol, const std::string& out_path) {
    const std::vector<lenslab::SweepRecord> records =
        lenslab::sweep(f, d1, d2_min, d2_max, steps, tol);
    const std::string csv = lenslab::render_csv(records);
    if (out_path.empty()) {
        std::cout << csv;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw lenslab::invalid_input("cannot open output file: " + out_path);
    }
    out << csv;
    if (!out.good()) {
        throw lenslab::invalid_input("failed writing output file: " + out_path);
    }
    return 0;
}

int run_cavity(bool has_x, double x, bool has_d, double d, double f,
               double tol, const std::string& format) {
    if (has_x == has_d) {
        throw lenslab::invalid_input(
            "cavity needs exactly one of --x or --d (with optional --f)");
    }
    const lenslab::CavityReport report =
        has_x ? lenslab::analyze_cavity_x(x, tol)
              : lenslab::analyze_cavity_distance(d, f, tol);
    std::cout << lenslab::render_output(report, lenslab::parse_format(format));
    return 0;
}

int run_verify(std::uint64_t seed, int cases, double tol) {
    namespace sc = lenslab::selfcheck;
    const std::vector<sc::CheckResult> results =
        sc::run_all({seed, cases, tol});
    bool all_passed = true;
    for (const sc::CheckResult& r : results) {
        std::cout << sc::format_result(r) << "\n";
        all_passed = all_passed && r.passed;
    }
    std::cout << (all_passed ? "all checks passed" : "some checks FAILED")
              << "\n";
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "para-axial one-lens analysis: unimodular composition, regime "
        "classification, normal-form extraction, the analytic (lambda, "
        "theta) chart, sweeps, and self checks"};
    app.require_subcommand(1);

    double tol_flag = 0.0;
    bool tol_given = false;
    const auto add_tol = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol_flag,
                        "classification tolerance (else LENSLAB_TOL, else 1e-10)")
            ->each([&](const std::string&) { tol_given = true; });
    };

    double d1 = 0.0, d2 = 0.0, f = 1.0;
    std::string format = "json";

    CLI::App* compose = app.add_subcommand(
        "compose", "compose and analyze a one-lens system");
    compose->add_option("--d1", d1, "object-side distance")->required();
    compose->add_option("--d2", d2, "image-side distance")->required();
    compose->add_option("--f", f, "focal length (default 1)");
    compose->add_option("--format", format, "json or text");
    add_tol(compose);

    CLI::App* params = app.add_subcommand(
        "params", "regime, normal-form parameters, and chart coordinates");
    params->add_option("--d1", d1, "object-side distance")->required();
    params->add_option("--d2", d2, "image-side distance")->required();
    params->add_option("--f", f, "focal length (default 1)");
    params->add_option("--format", format, "json or text");
    add_tol(params);

    double d2_min = 0.0, d2_max = 0.0;
    int steps = 0;
    std::string out_path;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "sweep d2 across a range and emit one CSV row per step");
    sweep_cmd->add_option("--f", f, "focal length (default 1)");
    sweep_cmd->add_option("--d1", d1, "object-side distance")->required();
    sweep_cmd->add_option("--d2-min", d2_min, "sweep start")->required();
    sweep_cmd->add_option("--d2-max", d2_max, "sweep end")->required();
    sweep_cmd->add_option("--steps", steps, "number of rows, at least 2")
        ->required();
    sweep_cmd->add_option("--out", out_path, "CSV file path (default stdout)");
    add_tol(sweep_cmd);

    double x = 0.0, d = 0.0;
    CLI::App* cavity = app.add_subcommand(
        "cavity", "symmetric-path analysis at reduced distance x = d/f");
    CLI::Option* opt_x = cavity->add_option("--x", x, "reduced distance, x > 1");
    CLI::Option* opt_d = cavity->add_option("--d", d, "mirror distance");
    cavity->add_option("--f", f, "focal length (default 1)");
    cavity->add_option("--format", format, "json or text");
    add_tol(cavity);

    std::uint64_t seed = 42;
    int cases = 1000;
    CLI::App* verify = app.add_subcommand(
        "verify", "run the property-check battery; exit 0 iff all pass");
    verify->add_option("--seed", seed, "random seed (default 42)");
    verify->add_option("--cases", cases, "cases per randomized check");
    add_tol(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        const double tol = resolve_tolerance(tol_given, tol_flag);
        if (compose->parsed()) return run_document(d1, d2, f, tol, format);
        if (params->parsed()) return run_document(d1, d2, f, tol, format);
        if (sweep_cmd->parsed()) {
            return run_sweep(f, d1, d2_min, d2_max, steps, tol, out_path);
        }
        if (cavity->parsed()) {
            return run_cavity(opt_x->count() > 0, x, opt_d->count() > 0, d, f,
                              tol, format);
        }
        if (verify->parsed()) return run_verify(seed, cases, tol);
        std::cerr << "error: no subcommand selected\n" << app.help() << std::flush;
        return 2;
    } catch (const lenslab::inconsistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const lenslab::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lenslab::configuration_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
