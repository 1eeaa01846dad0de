#pragma once

#include "eqloc/forms.hpp"

namespace eqloc {

/// Pullback (phi_t^V)^* f at p: the flow and its Jacobian are integrated by
/// RK4 on the variational equation, the form is pulled back through minors
/// of the Jacobian. Independent of the Cartan-formula Lie derivative; kept
/// as the oracle the Cartan path is tested against.
FormValue flow_pullback(const VectorField& v, const FormField& f, const Pt& p, double t,
                        int steps = 8);

/// Fourth-order central difference of flow pullbacks at t = 0,
/// (8(P_h - P_-h) - (P_2h - P_-2h)) / (12 h).
FormValue flow_lie_derivative(const VectorField& v, const FormField& f, const Pt& p,
                              double h = 1e-3);

}  // namespace eqloc
