#include "eqloc/characteristic.hpp"

#include <cmath>

#include "eqloc/error.hpp"

namespace eqloc {

EndFormValue::EndFormValue(int d, int ord) : dim(d), order(ord) {
    for (int i = 0; i < d * d; ++i) entries[i] = FormValue(d, ord);
}

EndFormValue EndFormValue::identity(int d, int ord) {
    EndFormValue m(d, ord);
    for (int a = 0; a < d; ++a) m.at(a, a) = FormValue::scalar(d, ord, 1.0);
    return m;
}

EndFormValue& EndFormValue::operator+=(const EndFormValue& r) {
    for (int i = 0; i < dim * dim; ++i) entries[i] += r.entries[i];
    return *this;
}

EndFormValue& EndFormValue::operator-=(const EndFormValue& r) {
    for (int i = 0; i < dim * dim; ++i) entries[i] -= r.entries[i];
    return *this;
}

EndFormValue EndFormValue::operator*(const EndFormValue& r) const {
    EndFormValue out(dim, std::min(order, r.order));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            FormValue sum(dim, out.order);
            for (int c = 0; c < dim; ++c) sum += at(a, c) * r.at(c, b);
            out.at(a, b) = sum;
        }
    return out;
}

EndFormValue EndFormValue::operator*(Complex s) const {
    EndFormValue out = *this;
    for (int i = 0; i < dim * dim; ++i) out.entries[i] = out.entries[i] * s;
    return out;
}

FormValue EndFormValue::trace() const {
    FormValue sum(dim, order);
    for (int a = 0; a < dim; ++a) sum += at(a, a);
    return sum;
}

double EndFormValue::max_abs() const {
    double mx = 0.0;
    for (int i = 0; i < dim * dim; ++i) mx = std::max(mx, entries[i].max_abs());
    return mx;
}

EndFormValue EndFormField::operator()(const Pt& p, int order) const {
    if (order > max_order)
        raise(ErrorKind::Capability, "endomorphism-form evaluator: jet order exhausted");
    return eval(p, order);
}

namespace {

// Moment endomorphism as jets in the orthonormal frame:
// mu(V)_{ab} = -<nabla_{e_b} V, e_a>.
void moment_jets(const Scenario& s, const VectorField& v, const Pt& p, int order,
                 const ChristoffelJets& cj, const JetMat& g,
                 const std::array<JetVec, 4>& frame, std::array<std::array<Jet, 4>, 4>& mu) {
    const int d = s.dim();
    JetVec vj_hi = v.eval(p, order + 1);

    // nabla[k][i] = (nabla_{d_i} V)^k at the requested order
    std::array<std::array<Jet, 4>, 4> nabla;
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
            Jet sum = vj_hi[k].derivative(i);
            for (int m = 0; m < d; ++m)
                sum += (cj.gamma[k][i][m] * vj_hi[m].truncated(order));
            nabla[k][i] = sum;
        }

    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Jet sum = Jet::constant(d, order, 0.0);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l)
                        sum += frame[b][i] * nabla[k][i] * g[k][l] * frame[a][l];
            mu[a][b] = -sum;
        }
}

EndFormField curvature_form_impl(const Scenario& s, const TwistPair* pair) {
    EndFormField out;
    out.dim = s.dim();
    // capture the scenario by value: it is plain data
    Scenario sc = s;
    std::optional<TwistPair> pr;
    if (pair) pr = *pair;
    out.eval = [sc, pr](const Pt& p, int order) {
        const int d = sc.dim();
        CurvatureJets R = curvature_jets(sc, p, order);
        JetMat g = sc.metric_jets(p, order);
        auto frame = orthonormal_frame(sc, g, order);

        EndFormValue val(d, order);
        // curvature 2-form entries: <R(d_i, d_j) e_b, e_a>
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                FormValue entry(d, order);
                for (int i = 0; i < d; ++i)
                    for (int j = i + 1; j < d; ++j) {
                        Jet sum = Jet::constant(d, order, 0.0);
                        for (int m = 0; m < d; ++m)
                            for (int q = 0; q < d; ++q)
                                for (int l = 0; l < d; ++l)
                                    sum += frame[b][m] * R.endo[q][m][i][j] * g[q][l] *
                                           frame[a][l];
                        entry.coef((1u << i) | (1u << j)) = sum;
                    }
                val.at(a, b) = entry;
            }

        if (pr) {
            ChristoffelJets cj = christoffel_jets(sc, p, order);
            std::array<std::array<Jet, 4>, 4> mx, my;
            moment_jets(sc, pr->X, p, order, cj, g, frame, mx);
            moment_jets(sc, pr->Y, p, order, cj, g, frame, my);
            const Complex I(0.0, 1.0);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    val.at(a, b).coef(0) -= mx[a][b];
                    val.at(a, b).coef(0) -= I * my[a][b];
                }
        }
        return val;
    };
    return out;
}

}  // namespace

EndFormField equivariant_curvature(const Scenario& s, const TwistPair& pair) {
    return curvature_form_impl(s, &pair);
}

EndFormField riemann_endomorphism_form(const Scenario& s) {
    return curvature_form_impl(s, nullptr);
}

FormField char_trace_form(std::span<const Complex> poly, const EndFormField& rt) {
    std::vector<Complex> c(poly.begin(), poly.end());
    FormField out;
    out.dim = rt.dim;
    out.max_order = rt.max_order;
    out.eval = [c, rt](const Pt& p, int order) {
        FormValue acc(rt.dim, order);
        if (!c.empty())
            acc.coef(0) = Jet::constant(rt.dim, order, c[0] * static_cast<double>(rt.dim));
        if (c.size() <= 1) return acc;  // constant polynomial: no curvature needed
        EndFormValue r = rt(p, order);
        EndFormValue power = r;
        acc += power.trace() * c[1];
        for (std::size_t k = 2; k < c.size(); ++k) {
            power = power * r;
            acc += power.trace() * c[k];
        }
        return acc;
    };
    return out;
}

FormField char_pfaffian_form(const EndFormField& rt) {
    if (rt.dim % 2 != 0)
        raise(ErrorKind::Argument, "Pfaffian form needs an even-dimensional scenario");
    FormField out;
    out.dim = rt.dim;
    out.max_order = rt.max_order;
    out.eval = [rt](const Pt& p, int order) {
        EndFormValue r = rt(p, order);
        return pfaffian_ring<FormValue>(
            rt.dim, [&](int a, int b) { return -r.at(a, b); },
            FormValue::scalar(rt.dim, order, 1.0));
    };
    return out;
}

FormField euler_form(const Scenario& s) {
    if (s.dim() % 2 != 0)
        raise(ErrorKind::Argument, "Euler form needs an even-dimensional scenario");
    EndFormField r = riemann_endomorphism_form(s);
    FormField out;
    out.dim = s.dim();
    out.eval = [r](const Pt& p, int order) {
        EndFormValue v = r(p, order) * Complex(1.0 / (2.0 * M_PI));
        return pfaffian_ring<FormValue>(
            r.dim, [&](int a, int b) { return v.at(a, b); },
            FormValue::scalar(r.dim, order, 1.0));
    };
    return out;
}

double bianchi_residual(const Scenario& s, const TwistPair& pair, std::span<const Pt> samples) {
    const int d = s.dim();
    EndFormField rt = equivariant_curvature(s, pair);

    double mx = 0.0;
    for (const Pt& p : samples) {
        EndFormValue r_hi = rt(p, 1);
        JetMat g = s.metric_jets(p, 1);
        auto frame = orthonormal_frame(s, g, 1);
        ChristoffelJets cj = christoffel_jets(s, p, 0);

        // frame connection 1-form theta_{ab} = <nabla e_b, e_a>
        EndFormValue theta(d, 0);
        {
            JetMat g0 = s.metric_jets(p, 0);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    FormValue entry(d, 0);
                    for (int i = 0; i < d; ++i) {
                        Jet sum = Jet::constant(d, 0, 0.0);
                        for (int k = 0; k < d; ++k) {
                            Jet cov = frame[b][k].derivative(i);
                            for (int m = 0; m < d; ++m)
                                cov += cj.gamma[k][i][m] * frame[b][m].truncated(0);
                            for (int l = 0; l < d; ++l)
                                sum += cov * g0[k][l] * frame[a][l].truncated(0);
                        }
                        entry.coef(1u << i) = sum;
                    }
                    theta.at(a, b) = entry;
                }
        }

        // (nabla Rt)_{ab} = d Rt_{ab} + (theta ^ Rt - Rt ^ theta)_{ab}
        EndFormValue res(d, 0);
        EndFormValue r0(d, 0);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                res.at(a, b) = r_hi.at(a, b).exterior();
                r0.at(a, b) = r_hi.at(a, b).truncated(0);
            }
        res += theta * r0;
        res -= r0 * theta;

        // + i_{X + iY} Rt
        JetVec x = pair.X.eval(p, 0);
        JetVec y = pair.Y.eval(p, 0);
        const Complex I(0.0, 1.0);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                res.at(a, b) += r0.at(a, b).contract(x);
                res.at(a, b) += r0.at(a, b).contract(y) * I;
            }

        mx = std::max(mx, res.max_abs());
    }
    return mx;
}

LocalizationReport verify_characteristic(const Scenario& s, const TwistPair& pair,
                                         CharKind which, std::span<const Complex> poly,
                                         std::uint64_t seed) {
    auto comps = find_zero_components(s, pair);
    if (comps.empty())
        raise(ErrorKind::Precondition,
              "characteristic localization on '" + s.name + "': empty zero set");

    EndFormField rt = equivariant_curvature(s, pair);
    if (which == CharKind::TracePolynomial) {
        std::string label = "Tr(f(Rt)), f coeffs [";
        for (std::size_t i = 0; i < poly.size(); ++i) {
            label += std::to_string(poly[i].real());
            if (i + 1 < poly.size()) label += ", ";
        }
        label += "]";
        return verify_localization(s, pair, char_trace_form(poly, rt), label, seed);
    }
    return verify_localization(s, pair, char_pfaffian_form(rt), "Pf(-Rt)", seed);
}

}  // namespace eqloc
