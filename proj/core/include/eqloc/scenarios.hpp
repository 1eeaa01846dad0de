#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqloc/scenario.hpp"

namespace eqloc {

/// Names of the built-in scenarios, catalog order.
std::vector<std::string> builtin_names();

/// Catalog entry, fully validated. `overrides` replaces parameter defaults
/// (t, c, t1, t2, eps, ...) before validation. Unknown name raises Argument.
Scenario builtin(const std::string& name,
                 const std::map<std::string, double>& overrides = {});

/// Parse, construct and validate a scenario from its JSON config document.
/// Rejection messages name the violated invariant (with residual values).
Scenario load_scenario(const std::string& json_text);

/// The normalized config document of a constructed scenario; feeding it back
/// through load_scenario reproduces the same behavior.
std::string serialize(const Scenario& s);

/// Declared Euler characteristic when the catalog knows it (used by the
/// Gauss-Bonnet calibration check).
std::optional<int> euler_characteristic(const Scenario& s);

}  // namespace eqloc
