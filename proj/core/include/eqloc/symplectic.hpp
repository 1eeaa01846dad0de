#pragma once

#include "eqloc/localization.hpp"

namespace eqloc {

/// Symplectic block of a scenario bound into form fields. `n` is the half
/// dimension; Hamiltonians are optional (the flat torus has i_X omega
/// non-exact and declares none).
struct SymplecticData {
    int n = 0;
    FormField omega;
    bool has_hamiltonians = false;
    FormField h_x;  // 0-forms, present iff has_hamiltonians
    FormField h_y;
};

/// Binds the scenario's symplectic block; empty when the scenario has none.
std::optional<SymplecticData> symplectic_data(const Scenario& s);

/// Residuals |dH_X - i_X omega| and |dH_Y - i_Y omega| over the sample set,
/// plus |d omega|. Reports non-applicability when Hamiltonians are absent.
ResidualReport hamiltonian_residual(const Scenario& s, const SymplecticData& sd,
                                    std::uint64_t seed = 20240915);

/// omega - H_X - i H_Y; twisted-closed when the Hamiltonian equations hold.
FormField equivariant_symplectic(const SymplecticData& sd);

struct DhReport {
    LocalizationReport theorem;   // exp(-H(p)) retained per component
    Complex rhs_literal{0.0, 0.0};  // numerator exp(omega) only
    Complex lhs_gauged{0.0, 0.0};   // LHS with H shifted to vanish at the
                                    // first declared component
    Complex gauge_shift{0.0, 0.0};  // (H_X + i H_Y) at that component
    std::string matched_reading;    // classical | literal | both | neither
};

/// Duistermaat-Heckman-type check: LHS = integral of exp(-H_X - i H_Y)
/// omega^n / n!, RHS by localizing eta = exp(omega - H_X - i H_Y). The
/// stationary-phase reading that keeps exp(-H(p)) per fixed component is the
/// pass target and is gauge-invariant; the reading that drops it (valid when
/// H vanishes on the whole zero set) is evaluated in the gauge pinned at the
/// first declared component and reported alongside.
DhReport verify_dh(const Scenario& s, const TwistPair& pair, std::uint64_t seed = 20240915);

}  // namespace eqloc
