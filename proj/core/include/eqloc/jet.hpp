#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace eqloc {

using Complex = std::complex<double>;

/// Coordinate point in a chart. Only the first Chart::dim entries are used.
using Pt = std::array<double, 4>;

inline constexpr int kMaxDim = 4;

/// Coefficient table shared by all jets of a given (dim, order):
/// multi-index enumeration in graded lexicographic order, a packed-exponent
/// lookup, the product pairing and the per-axis differentiation maps.
struct JetTable {
    int dim = 0;
    int order = 0;
    int nterms = 0;
    std::vector<std::array<std::uint8_t, 4>> exps;
    std::vector<int> lookup;  // packed exponents -> term index, -1 if absent

    struct MulTriple {
        std::int32_t a, b, out;
    };
    std::vector<MulTriple> mul;  // sorted by (out, a) for deterministic sums

    // diff[axis][i] = {source term, factor}; target term order is graded-lex
    // over the (dim, order-1) table.
    std::vector<std::vector<std::pair<std::int32_t, double>>> diff;

    int index_of(const std::array<std::uint8_t, 4>& e) const;
};

/// Shared immutable table for the given dimension/order (lazily built).
const JetTable* jet_table(int dim, int order);

/// Truncated multivariate Taylor expansion of a complex-valued function of
/// up to four real chart coordinates. All smooth scenario data is evaluated
/// on jets, so exterior derivatives and curvature come out exact to machine
/// precision rather than through finite-difference truncation.
class Jet {
public:
    Jet() = default;

    static Jet constant(int dim, int order, Complex value);
    /// Seed jet for coordinate `axis`: value + first-order term.
    static Jet variable(int dim, int order, int axis, double value);

    bool valid() const { return table_ != nullptr; }
    int dim() const { return table_->dim; }
    int order() const { return table_->order; }
    const JetTable& table() const { return *table_; }

    Complex value() const { return c_[0]; }
    /// Exactly zero in all coefficients (cheap sparsity test).
    bool is_zero() const {
        for (const auto& x : c_)
            if (x.real() != 0.0 || x.imag() != 0.0) return false;
        return true;
    }
    /// First partial derivative along `axis` (0 when order == 0).
    Complex partial(int axis) const;

    /// d/dx_axis as a jet one order lower.
    Jet derivative(int axis) const;
    /// Same coefficients truncated to a lower order.
    Jet truncated(int order) const;

    Complex& operator[](int i) { return c_[i]; }
    const Complex& operator[](int i) const { return c_[i]; }

    Jet& operator+=(const Jet& r);
    Jet& operator-=(const Jet& r);
    Jet& operator+=(Complex r) { c_[0] += r; return *this; }
    Jet& operator-=(Complex r) { c_[0] -= r; return *this; }
    Jet& operator*=(Complex r);

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator-(Jet a);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator+(Jet a, Complex b) { a += b; return a; }
    friend Jet operator+(Complex b, Jet a) { a += b; return a; }
    friend Jet operator-(Jet a, Complex b) { a -= b; return a; }
    friend Jet operator-(Complex b, const Jet& a) { return -a + b; }
    friend Jet operator*(Jet a, Complex b) { a *= b; return a; }
    friend Jet operator*(Complex b, Jet a) { a *= b; return a; }
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator/(Jet a, Complex b) { a *= 1.0 / b; return a; }
    friend Jet operator/(Complex a, const Jet& b);

    /// Composition with a univariate analytic function given its scaled
    /// derivative sequence d[k] = f^(k)(value())/k!.
    Jet compose(const std::vector<Complex>& scaled_derivs) const;

private:
    explicit Jet(const JetTable* t);

    const JetTable* table_ = nullptr;
    boost::container::small_vector<Complex, 6> c_;
};

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);
Jet sqrt(const Jet& a);

/// Seed the coordinates of `p` as order-`order` jet variables.
std::array<Jet, 4> seed_point(const Pt& p, int dim, int order);

}  // namespace eqloc
