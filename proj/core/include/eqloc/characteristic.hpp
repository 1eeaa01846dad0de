#pragma once

#include "eqloc/localization.hpp"

namespace eqloc {

/// Pointwise form with values in endomorphisms of TM, entries expressed in
/// the positively-oriented orthonormal chart frame. All products used here
/// have even-degree entries, so entrywise wedge multiplication commutes and
/// the scalar trace/Pfaffian formulas apply verbatim.
struct EndFormValue {
    int dim = 0;    // chart dimension == frame size
    int order = 0;
    std::array<FormValue, 16> entries;  // row-major dim x dim

    EndFormValue() = default;
    EndFormValue(int d, int ord);
    static EndFormValue identity(int d, int ord);

    FormValue& at(int a, int b) { return entries[a * dim + b]; }
    const FormValue& at(int a, int b) const { return entries[a * dim + b]; }

    EndFormValue& operator+=(const EndFormValue& r);
    EndFormValue& operator-=(const EndFormValue& r);
    EndFormValue operator*(const EndFormValue& r) const;  // matrix wedge product
    EndFormValue operator*(Complex s) const;
    FormValue trace() const;
    double max_abs() const;
};

struct EndFormField {
    int dim = 0;
    int max_order = 1 << 20;
    std::function<EndFormValue(const Pt&, int order)> eval;

    EndFormValue operator()(const Pt& p, int order) const;
};

/// Equivariant curvature R - mu(X) - i mu(Y): degree-2 Riemannian curvature
/// plus degree-0 moment endomorphisms, in the orthonormal frame.
EndFormField equivariant_curvature(const Scenario& s, const TwistPair& pair);

/// Plain curvature (zero fields), for the Euler-form calibration.
EndFormField riemann_endomorphism_form(const Scenario& s);

/// Tr(f(Rt)) for a polynomial f given by its coefficient list (c[k] on x^k);
/// twisted-closed for the equivariant curvature.
FormField char_trace_form(std::span<const Complex> poly, const EndFormField& rt);

/// Pf(-Rt); requires even chart dimension.
FormField char_pfaffian_form(const EndFormField& rt);

/// Pf(Omega/2pi) of the plain curvature: integrates to the Euler
/// characteristic (the sign calibration of every Pfaffian in the project).
FormField euler_form(const Scenario& s);

/// Sup over samples of the equivariant-Bianchi defect
/// | (nabla + i_{X+iY}) Rt | with the frame connection term included.
double bianchi_residual(const Scenario& s, const TwistPair& pair, std::span<const Pt> samples);

enum class CharKind { TracePolynomial, Pfaffian };

/// Localization check with eta = Tr(f(Rt)) or Pf(-Rt).
LocalizationReport verify_characteristic(const Scenario& s, const TwistPair& pair,
                                         CharKind which,
                                         std::span<const Complex> poly = {},
                                         std::uint64_t seed = 20240915);

}  // namespace eqloc
