#include "eqloc/equivariant.hpp"

#include <cmath>

#include "eqloc/error.hpp"

namespace eqloc {

FormField twisted_differential(const TwistPair& pair, const FormField& f) {
    FormField out;
    out.dim = f.dim;
    out.max_order = f.max_order - 1;
    out.eval = [pair, f](const Pt& p, int order) {
        FormValue w = f(p, order + 1);
        FormValue result = w.exterior();
        FormValue wt = w.truncated(order);
        result += wt.contract(pair.X.eval(p, order));
        result += wt.contract(pair.Y.eval(p, order)) * Complex(0.0, 1.0);
        return result;
    };
    return out;
}

FormField twisted_contraction(const TwistPair& pair, const FormField& f) {
    FormField out;
    out.dim = f.dim;
    out.max_order = f.max_order;
    out.eval = [pair, f](const Pt& p, int order) {
        FormValue w = f(p, order);
        return w.contract(pair.X.eval(p, order)) +
               w.contract(pair.Y.eval(p, order)) * Complex(0.0, 1.0);
    };
    return out;
}

FormField dual_one_form(const Scenario& s, const VectorField& v) {
    FormField out;
    out.dim = s.dim();
    out.eval = [me = s.metric_eval(), v](const Pt& p, int order) {
        const int d = me.dim;
        JetMat g = me(p, order);
        JetVec vj = v.eval(p, order);
        FormValue w(d, order);
        for (int i = 0; i < d; ++i) {
            Jet sum = Jet::constant(d, order, 0.0);
            for (int j = 0; j < d; ++j) sum += g[i][j] * vj[j];
            w.coef(1u << i) = sum;
        }
        return w;
    };
    return out;
}

const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::XplusIY: return "X'+iY'";
        case GeneratorKind::YminusIX: return "Y'-iX'";
        case GeneratorKind::XminusIY: return "X'-iY'";
        case GeneratorKind::YplusIX: return "Y'+iX'";
    }
    return "?";
}

bool generator_needs_commuting(GeneratorKind k) {
    return k == GeneratorKind::XminusIY || k == GeneratorKind::YplusIX;
}

std::vector<GeneratorKind> admissible_generators(const TwistPair& pair) {
    std::vector<GeneratorKind> out{GeneratorKind::XplusIY, GeneratorKind::YminusIX};
    if (pair.commuting) {
        out.push_back(GeneratorKind::XminusIY);
        out.push_back(GeneratorKind::YplusIX);
    }
    return out;
}

GeneratorForms special_closed_form(const Scenario& s, const TwistPair& pair,
                                   GeneratorKind kind) {
    if (generator_needs_commuting(kind) && !pair.commuting)
        raise(ErrorKind::Precondition,
              std::string("generator ") + to_string(kind) + " requires a commuting pair");

    FormField xd = dual_one_form(s, pair.X);
    FormField yd = dual_one_form(s, pair.Y);
    const Complex I(0.0, 1.0);

    FormField beta;
    switch (kind) {
        case GeneratorKind::XplusIY: beta = xd + I * yd; break;
        case GeneratorKind::YminusIX: beta = yd - I * xd; break;
        case GeneratorKind::XminusIY: beta = xd - I * yd; break;
        case GeneratorKind::YplusIX: beta = yd + I * xd; break;
    }

    GeneratorForms out;
    out.beta = beta;
    out.dbeta = twisted_differential(pair, beta);

    FormField ddbeta = twisted_differential(pair, out.dbeta);
    auto samples = sample_interior(s.chart, 32, 0x9e3779b9u);
    const double resid = sup_abs(ddbeta, samples);
    if (resid > 1e-9)
        raise(ErrorKind::Inconsistency,
              std::string("generator ") + to_string(kind) +
                  " is not twisted-closed: residual " + std::to_string(resid));
    return out;
}

namespace {

double field_sup(const Scenario& s, const std::function<JetVec(const Pt&)>& f,
                 std::span<const Pt> samples) {
    double mx = 0.0;
    for (const Pt& p : samples) {
        JetVec v = f(p);
        for (int i = 0; i < s.dim(); ++i)
            mx = std::max(mx, std::abs(v[i].value()));
    }
    return mx;
}

}  // namespace

double killing_residual(const Scenario& s, const VectorField& v,
                        std::span<const Pt> samples) {
    const int d = s.dim();
    double mx = 0.0;
    for (const Pt& p : samples) {
        JetMat g = s.metric_jets(p, 1);
        JetVec vj = v.eval(p, 1);
        // (L_V g)_ij = V^k d_k g_ij + g_kj d_i V^k + g_ik d_j V^k
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                Complex sum = 0.0;
                for (int k = 0; k < d; ++k) {
                    sum += vj[k].value() * g[i][j].partial(k);
                    sum += g[k][j].value() * vj[k].partial(i);
                    sum += g[i][k].value() * vj[k].partial(j);
                }
                mx = std::max(mx, std::abs(sum));
            }
    }
    return mx;
}

double commutator_residual(const Scenario& s, const TwistPair& pair,
                           std::span<const Pt> samples) {
    const int d = s.dim();
    return field_sup(s, [&](const Pt& p) {
        JetVec x = pair.X.eval(p, 1);
        JetVec y = pair.Y.eval(p, 1);
        JetVec out;
        for (int k = 0; k < d; ++k) {
            Complex sum = 0.0;
            for (int j = 0; j < d; ++j)
                sum += x[j].value() * y[k].partial(j) - y[j].value() * x[k].partial(j);
            out[k] = Jet::constant(d, 0, sum);
        }
        return out;
    }, samples);
}

ResidualReport lemma_residual(const Scenario& s, const TwistPair& pair, LemmaCheck which,
                              const FormField* xi, const FormField* eta,
                              std::uint64_t seed) {
    auto samples = s.residual_samples(seed);
    ResidualReport r;
    r.tolerance = s.tol.op_abs;

    switch (which) {
        case LemmaCheck::Killing: {
            r.name = "killing";
            r.parts.emplace_back("|L_X g|", killing_residual(s, pair.X, samples));
            r.parts.emplace_back("|L_Y g|", killing_residual(s, pair.Y, samples));
            break;
        }
        case LemmaCheck::L2: {
            r.name = "L2";
            FormField lhs = lie_derivative(pair.X, dual_one_form(s, pair.Y)) +
                            lie_derivative(pair.Y, dual_one_form(s, pair.X));
            r.parts.emplace_back("|L_X Y' + L_Y X'|", sup_abs(lhs, samples));
            break;
        }
        case LemmaCheck::L4: {
            r.name = "L4";
            r.parts.emplace_back("|[X,Y]|", commutator_residual(s, pair, samples));
            break;
        }
        case LemmaCheck::L5: {
            if (!pair.commuting)
                raise(ErrorKind::Precondition, "L5 requires a commuting pair");
            r.name = "L5";
            r.parts.emplace_back(
                "|L_X Y'|", sup_abs(lie_derivative(pair.X, dual_one_form(s, pair.Y)), samples));
            r.parts.emplace_back(
                "|L_Y X'|", sup_abs(lie_derivative(pair.Y, dual_one_form(s, pair.X)), samples));
            break;
        }
        case LemmaCheck::L1: {
            if (!xi || !eta)
                raise(ErrorKind::Precondition, "L1 needs the caller-supplied m-forms xi, eta");
            r.name = "L1";
            r.parts.emplace_back("|d xi|", sup_abs(exterior_derivative(*xi), samples));
            r.parts.emplace_back("|d eta|", sup_abs(exterior_derivative(*eta), samples));
            FormField c1 = interior_product(pair.X, *xi) - interior_product(pair.Y, *eta);
            FormField c2 = interior_product(pair.X, *eta) + interior_product(pair.Y, *xi);
            r.parts.emplace_back("|i_X xi - i_Y eta|", sup_abs(c1, samples));
            r.parts.emplace_back("|i_X eta + i_Y xi|", sup_abs(c2, samples));
            break;
        }
    }

    for (const auto& [_, v] : r.parts) r.max_residual = std::max(r.max_residual, v);
    r.pass = r.max_residual < r.tolerance;
    return r;
}

}  // namespace eqloc
