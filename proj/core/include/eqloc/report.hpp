#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqloc/jet.hpp"

namespace eqloc {

struct CheckResult {
    std::string name;
    std::string ref;     // which identity this exercises (lemma/theorem label)
    std::string status;  // pass | fail | skip | error
    double residual = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    std::optional<Complex> lhs;
    std::optional<Complex> rhs;
    std::vector<std::pair<std::string, Complex>> components;
    std::string note;

    bool ok() const { return status == "pass" || status == "skip"; }
};

struct Report {
    int schema_version = 1;
    std::string scenario;
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    std::map<std::string, double> timings;  // seconds per suite
    std::string timestamp;

    bool all_pass() const;
};

/// JSON document for the report. With strip_volatile the timestamp and
/// timings are dropped, leaving the byte-stable part two identically-seeded
/// runs must agree on.
std::string report_to_json(const Report& r, bool strip_volatile = false);

struct RunSpec {
    std::string scenario;                 // builtin name or config file path
    std::string suite = "all";            // lemmas | theorem1..4 | sweep-s | decay | all
    std::vector<double> s_grid;           // empty: suite defaults
    std::map<std::string, double> params; // parameter overrides (t, c, ...)
    std::optional<double> tol;            // integral_rel override
    std::optional<int> nodes;             // initial nodes per axis override
    std::uint64_t seed = 20240915;
    std::string out_path;                 // empty: stdout only
};

/// Execute the selected suites; module errors surface as failing checks,
/// never as a crash.
Report run_suites(const RunSpec& spec);

}  // namespace eqloc
