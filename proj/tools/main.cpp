// Batch verification runner: resolves a scenario, executes the selected
// check suites and emits a JSON report. Exit status 0 iff every check
// passed (skips count as passing).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eqloc/report.hpp"
#include "eqloc/scenarios.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of two-Killing-field localization identities"};

    eqloc::RunSpec spec;
    bool list_scenarios = false;
    std::vector<std::string> param_kv;
    double t_value = std::numeric_limits<double>::quiet_NaN();
    double tol_value = std::numeric_limits<double>::quiet_NaN();
    int nodes_value = -1;

    app.add_option("--scenario", spec.scenario,
                   "built-in scenario name or path to a JSON config");
    app.add_option("--suite", spec.suite,
                   "lemmas | theorem1 | theorem2 | theorem3 | theorem4 | sweep-s | decay | all")
        ->default_val("all");
    app.add_option("--s", spec.s_grid, "deformation parameter grid (repeatable)");
    app.add_option("--t", t_value, "override the scenario parameter t");
    app.add_option("--tol", tol_value, "relative tolerance for integral agreement");
    app.add_option("--nodes", nodes_value, "initial quadrature nodes per axis");
    app.add_option("--seed", spec.seed, "seed for all randomized sampling")
        ->default_val(20240915);
    app.add_option("--out", spec.out_path, "write the JSON report to this path");
    app.add_option("--param", param_kv,
                   "extra scenario parameter override, e.g. --param c=2 (repeatable)");
    app.add_flag("--list-scenarios", list_scenarios, "print the built-in catalog and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_scenarios) {
        for (const auto& n : eqloc::builtin_names()) std::cout << n << "\n";
        return 0;
    }
    if (spec.scenario.empty()) {
        std::cerr << "error: --scenario is required (or use --list-scenarios)\n";
        return 2;
    }

    if (!std::isnan(t_value)) spec.params["t"] = t_value;
    if (!std::isnan(tol_value)) spec.tol = tol_value;
    if (nodes_value > 0) spec.nodes = nodes_value;
    for (const auto& kv : param_kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --param expects key=value, got '" << kv << "'\n";
            return 2;
        }
        try {
            spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "error: --param value in '" << kv << "' is not a number\n";
            return 2;
        }
    }

    eqloc::Report report = eqloc::run_suites(spec);
    const std::string doc = eqloc::report_to_json(report);

    if (!spec.out_path.empty()) {
        std::ofstream out(spec.out_path);
        if (!out) {
            std::cerr << "error: cannot write report to '" << spec.out_path << "'\n";
            return 2;
        }
        out << doc << "\n";
    }
    std::cout << doc << std::endl;

    for (const auto& c : report.checks)
        if (!c.ok())
            std::cerr << "check failed: " << c.name << " (" << c.status << ") " << c.note
                      << "\n";

    return report.all_pass() ? 0 : 1;
}
