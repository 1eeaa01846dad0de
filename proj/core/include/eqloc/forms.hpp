#pragma once

#include <functional>
#include <span>
#include <vector>

#include "eqloc/scenario.hpp"

namespace eqloc {

/// Pointwise inhomogeneous complex differential form. Coefficients are
/// indexed by bitmask over the chart axes (bit i set = dx_i present in the
/// basis monomial, increasing-axis order); antisymmetry is implied by the
/// canonical indexing. Each coefficient is a jet, so a value carries its own
/// derivatives up to the order it was evaluated at.
class FormValue {
public:
    FormValue() = default;
    FormValue(int dim, int order);  // zero
    static FormValue scalar(int dim, int order, Complex c);

    int dim() const { return dim_; }
    int order() const { return order_; }
    unsigned nmasks() const { return 1u << dim_; }

    Jet& coef(unsigned mask) { return c_[mask]; }
    const Jet& coef(unsigned mask) const { return c_[mask]; }

    FormValue& operator+=(const FormValue& r);
    FormValue& operator-=(const FormValue& r);
    friend FormValue operator+(FormValue a, const FormValue& b) { a += b; return a; }
    friend FormValue operator-(FormValue a, const FormValue& b) { a -= b; return a; }
    FormValue operator-() const;

    /// Graded wedge product (the ring product of the exterior algebra).
    friend FormValue operator*(const FormValue& a, const FormValue& b);
    FormValue operator*(const Jet& s) const;   // scale by a 0-form jet
    FormValue operator*(Complex s) const;

    /// Interior product i_v with jet-valued vector components.
    FormValue contract(const JetVec& v) const;
    /// Exterior derivative of the value; coefficient jets drop one order.
    FormValue exterior() const;
    /// exp(a) = exp(degree-0 part) * terminating series in the nilpotent rest.
    FormValue exp() const;
    /// Inverse of a form with invertible degree-0 part (nilpotent series).
    FormValue inverse() const;

    FormValue truncated(int order) const;
    FormValue degree_part(int k) const;

    /// Value of the top-degree coefficient (the dx_0^...^dx_{dim-1} slot).
    Complex top() const { return c_[nmasks() - 1].value(); }
    /// Componentwise maximum modulus over all coefficient values.
    double max_abs() const;

private:
    int dim_ = 0;
    int order_ = 0;
    std::array<Jet, 16> c_;
};

/// Sign of e_A ^ e_B for disjoint index masks (merge-inversion parity).
int wedge_sign(unsigned a, unsigned b);

/// Truncate every valid component of a jet vector to the given order.
JetVec truncate_vec(const JetVec& v, int order);

/// Chart-wise smooth assignment point -> FormValue, closed under the exterior
/// calculus operators below. Evaluators must return coefficients at exactly
/// the requested jet order; operators that differentiate request one order
/// more from their input (`max_order` advertises the headroom and exhaustion
/// raises a Capability error).
struct FormField {
    int dim = 0;
    int max_order = 1 << 20;
    std::function<FormValue(const Pt&, int order)> eval;

    FormValue operator()(const Pt& p, int order) const;
};

FormField exterior_derivative(const FormField& f);
FormField interior_product(const VectorField& v, const FormField& f);
/// Cartan formula L_v = d i_v + i_v d.
FormField lie_derivative(const VectorField& v, const FormField& f);
FormField wedge(const FormField& a, const FormField& b);
FormField exp_form(const FormField& a);

FormField operator+(const FormField& a, const FormField& b);
FormField operator-(const FormField& a, const FormField& b);
FormField operator*(Complex s, const FormField& f);

/// Constant 0-form.
FormField constant_form(int dim, Complex c);
/// 0-form from a jet-valued scalar function.
FormField scalar_form(int dim, std::function<Jet(const Pt&, int)> f);
/// The coordinate 1-form dx_axis.
FormField coordinate_one_form(int dim, int axis);

/// Sup of max_abs over a sample set (order-0 evaluation).
double sup_abs(const FormField& f, std::span<const Pt> samples);

}  // namespace eqloc
