#include "eqloc/scenario.hpp"

#include <algorithm>

#include "eqloc/error.hpp"
#include "eqloc/quadrature.hpp"

namespace eqloc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Definition: return "definition";
        case ErrorKind::Capability: return "capability";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Integration: return "integration";
        case ErrorKind::Inconsistency: return "inconsistency";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Argument: return "argument";
    }
    return "unknown";
}

std::vector<int> FixedComponent::free_axes(const Chart& ambient) const {
    std::vector<int> out;
    for (int i = 0; i < ambient.dim; ++i)
        if (!is_fixed_axis(i)) out.push_back(i);
    return out;
}

bool FixedComponent::is_fixed_axis(int axis) const {
    return std::any_of(fixed_axes.begin(), fixed_axes.end(),
                       [axis](const auto& fa) { return fa.axis == axis; });
}

Pt FixedComponent::ambient_point(const Chart& ambient, const Pt& component_pt) const {
    Pt p{};
    int free = 0;
    for (int i = 0; i < ambient.dim; ++i) {
        if (is_fixed_axis(i)) continue;
        p[i] = component_pt[free++];
    }
    for (const auto& fa : fixed_axes) {
        double v = fa.value;
        // step off the slice toward the domain interior so coordinate
        // singularities on the slice itself are never touched
        const double mid = 0.5 * (ambient.lo[fa.axis] + ambient.hi[fa.axis]);
        v += (v <= mid ? approach : -approach);
        p[fa.axis] = v;
    }
    return p;
}

JetMat Scenario::MetricEval::operator()(const Pt& p, int order) const {
    auto coords = seed_point(p, dim, order);
    std::span<const Jet> cs(coords.data(), dim);
    JetMat out;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            Jet v = g[i][j](cs);
            if (i != j) {
                // symmetry enforced exactly by averaging with the mirror entry
                v = (v + g[j][i](cs)) * Complex(0.5);
                out[j][i] = v;
            }
            out[i][j] = v;
        }
    return out;
}

JetMat Scenario::metric_jets(const Pt& p, int order) const {
    return MetricEval{dim(), metric}(p, order);
}

JetVec Scenario::field_jets(FieldSel which, const Pt& p, int order) const {
    const int d = dim();
    auto coords = seed_point(p, d, order);
    std::span<const Jet> cs(coords.data(), d);
    const auto& f = (which == FieldSel::X) ? field_x : field_y;
    JetVec v;
    for (int i = 0; i < d; ++i) v[i] = f[i](cs);
    return v;
}

std::vector<Pt> Scenario::residual_samples(std::uint64_t seed, int n_random) const {
    std::vector<Pt> pts = sample_interior(chart, n_random, seed);
    auto grid = tensor_grid_nodes(chart, quad.initial_nodes);
    pts.insert(pts.end(), grid.begin(), grid.end());
    return pts;
}

VectorField VectorField::from_scenario(const Scenario& s, FieldSel which) {
    VectorField v;
    v.dim = s.dim();
    v.label = (which == FieldSel::X) ? "X" : "Y";
    v.eval = [f = (which == FieldSel::X ? s.field_x : s.field_y),
              d = s.dim()](const Pt& p, int order) {
        auto coords = seed_point(p, d, order);
        std::span<const Jet> cs(coords.data(), d);
        JetVec out;
        for (int i = 0; i < d; ++i) out[i] = f[i](cs);
        return out;
    };
    return v;
}

VectorField VectorField::zero(int dim) {
    VectorField v;
    v.dim = dim;
    v.label = "0";
    v.eval = [dim](const Pt&, int order) {
        JetVec out;
        for (int i = 0; i < dim; ++i) out[i] = Jet::constant(dim, order, 0.0);
        return out;
    };
    return v;
}

VectorField VectorField::combination(Complex a, const VectorField& u,
                                     Complex b, const VectorField& v) {
    VectorField w;
    w.dim = u.dim;
    w.label = u.label + "+" + v.label;
    w.eval = [a, b, u, v](const Pt& p, int order) {
        JetVec uu = u.eval(p, order);
        JetVec vv = v.eval(p, order);
        JetVec out;
        for (int i = 0; i < u.dim; ++i) out[i] = uu[i] * a + vv[i] * b;
        return out;
    };
    return w;
}

TwistPair TwistPair::of(const Scenario& s) {
    return TwistPair{VectorField::from_scenario(s, FieldSel::X),
                     VectorField::from_scenario(s, FieldSel::Y), s.commuting};
}

}  // namespace eqloc
