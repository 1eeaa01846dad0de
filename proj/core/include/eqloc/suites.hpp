#pragma once

#include "eqloc/forms.hpp"
#include "eqloc/report.hpp"

namespace eqloc {

/// Operator identities: d^2 = 0, Cartan against the flow oracle, the
/// twisted-square identity, all on seeded random polynomial forms.
std::vector<CheckResult> suite_operators(const Scenario& s, std::uint64_t seed);

/// Lemma residuals applicable to the scenario (Killing, 1, 2, 4, 5) plus the
/// generator double-differential checks (3 and 6).
std::vector<CheckResult> suite_lemmas(const Scenario& s, std::uint64_t seed);

std::vector<CheckResult> suite_theorem1(const Scenario& s, std::uint64_t seed);
std::vector<CheckResult> suite_theorem2(const Scenario& s, std::uint64_t seed);
std::vector<CheckResult> suite_theorem3(const Scenario& s, std::uint64_t seed);
std::vector<CheckResult> suite_theorem4(const Scenario& s, std::uint64_t seed);

/// Lemma 7 s-invariance over the grid for every admissible generator, plus
/// the composed-deformation identities.
std::vector<CheckResult> suite_sweep_s(const Scenario& s, std::span<const double> s_grid,
                                       std::uint64_t seed);

/// Empty-zero-set route: vanishing integrals of the closed test forms and
/// the exponential-decay profile of the deformation integrals.
std::vector<CheckResult> suite_decay(const Scenario& s, std::span<const double> s_grid,
                                     std::uint64_t seed);

/// Built-in twisted-closed test forms of a scenario, with labels.
std::vector<std::pair<std::string, FormField>> closed_test_forms(const Scenario& s);

}  // namespace eqloc
