#include "eqloc/forms.hpp"

#include <bit>
#include <cmath>

#include "eqloc/error.hpp"

namespace eqloc {

int wedge_sign(unsigned a, unsigned b) {
    // parity of #{(i, j) : i in a, j in b, i > j}
    int inversions = 0;
    for (unsigned i = 0; i < 4; ++i) {
        if (!(a & (1u << i))) continue;
        inversions += std::popcount(b & ((1u << i) - 1u));
    }
    return (inversions & 1) ? -1 : 1;
}

FormValue::FormValue(int dim, int order) : dim_(dim), order_(order) {
    for (unsigned m = 0; m < nmasks(); ++m)
        c_[m] = Jet::constant(dim, order, 0.0);
}

FormValue FormValue::scalar(int dim, int order, Complex c) {
    FormValue v(dim, order);
    v.c_[0] = Jet::constant(dim, order, c);
    return v;
}

FormValue& FormValue::operator+=(const FormValue& r) {
    for (unsigned m = 0; m < nmasks(); ++m) c_[m] += r.c_[m];
    return *this;
}

FormValue& FormValue::operator-=(const FormValue& r) {
    for (unsigned m = 0; m < nmasks(); ++m) c_[m] -= r.c_[m];
    return *this;
}

FormValue FormValue::operator-() const {
    FormValue out = *this;
    for (unsigned m = 0; m < out.nmasks(); ++m) out.c_[m] = -out.c_[m];
    return out;
}

FormValue operator*(const FormValue& a, const FormValue& b) {
    FormValue out(a.dim_, std::min(a.order_, b.order_));
    const bool ta = a.order_ != out.order_, tb = b.order_ != out.order_;
    for (unsigned ma = 0; ma < a.nmasks(); ++ma) {
        if (a.c_[ma].is_zero()) continue;
        for (unsigned mb = 0; mb < b.nmasks(); ++mb) {
            if (ma & mb) continue;
            if (b.c_[mb].is_zero()) continue;
            const Jet pa = ta ? a.c_[ma].truncated(out.order_) : a.c_[ma];
            const Jet pb = tb ? b.c_[mb].truncated(out.order_) : b.c_[mb];
            Jet prod = pa * pb;
            if (wedge_sign(ma, mb) < 0) prod = -prod;
            out.c_[ma | mb] += prod;
        }
    }
    return out;
}

FormValue FormValue::operator*(const Jet& s) const {
    FormValue out = *this;
    for (unsigned m = 0; m < nmasks(); ++m) out.c_[m] = out.c_[m] * s;
    return out;
}

FormValue FormValue::operator*(Complex s) const {
    FormValue out = *this;
    for (unsigned m = 0; m < nmasks(); ++m) out.c_[m] *= s;
    return out;
}

FormValue FormValue::contract(const JetVec& v) const {
    FormValue out(dim_, order_);
    for (unsigned m = 0; m < nmasks(); ++m) {
        // target mask m receives sum over axes j not in m of
        // v_j * coef(m | 1<<j) * (-1)^{#bits of m below j}
        Jet& acc = out.c_[m];
        for (int j = 0; j < dim_; ++j) {
            const unsigned bit = 1u << j;
            if (m & bit) continue;
            if (v[j].is_zero() || c_[m | bit].is_zero()) continue;
            Jet term = v[j] * c_[m | bit];
            if (std::popcount(m & (bit - 1u)) & 1) term = -term;
            acc += term;
        }
    }
    return out;
}

FormValue FormValue::exterior() const {
    if (order_ < 1)
        raise(ErrorKind::Capability, "exterior derivative needs one jet order of headroom");
    FormValue out(dim_, order_ - 1);
    for (unsigned m = 0; m < nmasks(); ++m) {
        Jet acc = Jet::constant(dim_, order_ - 1, 0.0);
        for (int j = 0; j < dim_; ++j) {
            const unsigned bit = 1u << j;
            if (!(m & bit)) continue;
            Jet term = c_[m & ~bit].derivative(j);
            if (std::popcount(m & (bit - 1u)) & 1) term = -term;
            acc += term;
        }
        out.c_[m] = acc;
    }
    return out;
}

FormValue FormValue::exp() const {
    const Jet a0 = c_[0];
    FormValue rest = *this;
    rest.c_[0] = Jet::constant(dim_, order_, 0.0);

    // exp(a0) * sum_{k<=dim} rest^k / k!  (rest is nilpotent)
    FormValue acc = FormValue::scalar(dim_, order_, 1.0);
    FormValue power = acc;
    double factorial = 1.0;
    for (int k = 1; k <= dim_; ++k) {
        power = power * rest;
        factorial *= k;
        acc += power * Complex(1.0 / factorial);
    }
    return acc * eqloc::exp(a0);
}

FormValue FormValue::inverse() const {
    const Jet u0 = c_[0];
    if (std::abs(u0.value()) == 0.0)
        raise(ErrorKind::Argument, "form inverse: degree-0 part vanishes");
    FormValue rest = *this;
    rest.c_[0] = Jet::constant(dim_, order_, 0.0);

    // 1/(u0 + n) = (1/u0) sum_k (-n/u0)^k, terminating
    const Jet inv0 = Jet::constant(dim_, order_, 1.0) / u0;
    FormValue ratio = -(rest * inv0);
    FormValue acc = FormValue::scalar(dim_, order_, 1.0);
    FormValue power = acc;
    for (int k = 1; k <= dim_; ++k) {
        power = power * ratio;
        acc += power;
    }
    return acc * inv0;
}

FormValue FormValue::truncated(int order) const {
    if (order == order_) return *this;
    FormValue out(dim_, order);
    for (unsigned m = 0; m < nmasks(); ++m) out.c_[m] = c_[m].truncated(order);
    return out;
}

FormValue FormValue::degree_part(int k) const {
    FormValue out(dim_, order_);
    for (unsigned m = 0; m < nmasks(); ++m)
        if (std::popcount(m) == k) out.c_[m] = c_[m];
    return out;
}

double FormValue::max_abs() const {
    double mx = 0.0;
    for (unsigned m = 0; m < nmasks(); ++m)
        mx = std::max(mx, std::abs(c_[m].value()));
    return mx;
}

FormValue FormField::operator()(const Pt& p, int order) const {
    if (order > max_order)
        raise(ErrorKind::Capability,
              "form evaluator supports jet order " + std::to_string(max_order) +
                  ", requested " + std::to_string(order));
    return eval(p, order);
}

FormField exterior_derivative(const FormField& f) {
    FormField out;
    out.dim = f.dim;
    out.max_order = f.max_order - 1;
    out.eval = [f](const Pt& p, int order) { return f(p, order + 1).exterior(); };
    return out;
}

FormField interior_product(const VectorField& v, const FormField& f) {
    FormField out;
    out.dim = f.dim;
    out.max_order = f.max_order;
    out.eval = [v, f](const Pt& p, int order) {
        return f(p, order).contract(v.eval(p, order));
    };
    return out;
}

JetVec truncate_vec(const JetVec& v, int order) {
    JetVec out;
    for (int i = 0; i < 4; ++i)
        if (v[i].valid()) out[i] = v[i].truncated(std::min(order, v[i].order()));
    return out;
}

FormField lie_derivative(const VectorField& v, const FormField& f) {
    FormField out;
    out.dim = f.dim;
    out.max_order = f.max_order - 1;
    out.eval = [v, f](const Pt& p, int order) {
        FormValue w = f(p, order + 1);
        JetVec vh = v.eval(p, order + 1);
        FormValue d_then_i = w.exterior().contract(truncate_vec(vh, order));
        FormValue i_then_d = w.contract(vh).exterior();
        return d_then_i + i_then_d;
    };
    return out;
}

FormField wedge(const FormField& a, const FormField& b) {
    FormField out;
    out.dim = a.dim;
    out.max_order = std::min(a.max_order, b.max_order);
    out.eval = [a, b](const Pt& p, int order) { return a(p, order) * b(p, order); };
    return out;
}

FormField exp_form(const FormField& a) {
    FormField out;
    out.dim = a.dim;
    out.max_order = a.max_order;
    out.eval = [a](const Pt& p, int order) { return a(p, order).exp(); };
    return out;
}

FormField operator+(const FormField& a, const FormField& b) {
    FormField out;
    out.dim = a.dim;
    out.max_order = std::min(a.max_order, b.max_order);
    out.eval = [a, b](const Pt& p, int order) { return a(p, order) + b(p, order); };
    return out;
}

FormField operator-(const FormField& a, const FormField& b) {
    FormField out;
    out.dim = a.dim;
    out.max_order = std::min(a.max_order, b.max_order);
    out.eval = [a, b](const Pt& p, int order) { return a(p, order) - b(p, order); };
    return out;
}

FormField operator*(Complex s, const FormField& f) {
    FormField out;
    out.dim = f.dim;
    out.max_order = f.max_order;
    out.eval = [s, f](const Pt& p, int order) { return f(p, order) * s; };
    return out;
}

FormField constant_form(int dim, Complex c) {
    FormField out;
    out.dim = dim;
    out.eval = [dim, c](const Pt&, int order) { return FormValue::scalar(dim, order, c); };
    return out;
}

FormField scalar_form(int dim, std::function<Jet(const Pt&, int)> f) {
    FormField out;
    out.dim = dim;
    out.eval = [dim, f = std::move(f)](const Pt& p, int order) {
        FormValue v(dim, order);
        v.coef(0) = f(p, order);
        return v;
    };
    return out;
}

FormField coordinate_one_form(int dim, int axis) {
    FormField out;
    out.dim = dim;
    out.eval = [dim, axis](const Pt&, int order) {
        FormValue v(dim, order);
        v.coef(1u << axis) = Jet::constant(dim, order, 1.0);
        return v;
    };
    return out;
}

double sup_abs(const FormField& f, std::span<const Pt> samples) {
    double mx = 0.0;
    for (const Pt& p : samples) mx = std::max(mx, f(p, 0).max_abs());
    return mx;
}

}  // namespace eqloc
