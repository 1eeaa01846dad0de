#include "eqloc/localization.hpp"

#include <algorithm>
#include <cmath>

#include "eqloc/error.hpp"

namespace eqloc {

IntegralResult integrate(const Scenario& s, const FormField& f) {
    if (!s.compact)
        raise(ErrorKind::Precondition,
              "scenario '" + s.name + "' is a non-compact chart: integrals are not defined");
    const double sign = s.orientation_sign;
    auto density = [&f, sign](const Pt& p) { return sign * f(p, 0).top(); };
    return integrate_over_chart(s.chart, density, s.quad.initial_nodes, s.quad.max_nodes,
                                s.quad.max_total_nodes, s.quad.refine_rel);
}

namespace {

// Restrict an ambient jet to the slice spanned by `free` axes: keep the
// Taylor terms supported on those axes only.
Jet restrict_jet(const Jet& j, const std::vector<int>& free) {
    const int cd = static_cast<int>(free.size());
    Jet out = Jet::constant(std::max(cd, 1), j.order(), 0.0);
    const JetTable& src = j.table();
    const JetTable& dst = out.table();
    for (int k = 0; k < dst.nterms; ++k) {
        std::array<std::uint8_t, 4> e{0, 0, 0, 0};
        for (int b = 0; b < cd; ++b) e[free[b]] = dst.exps[k][b];
        out[k] = j[src.index_of(e)];
    }
    return out;
}

Chart component_chart(const Scenario& s, const FixedComponent& comp) {
    Chart sub;
    sub.id = s.chart.id + ":" + comp.id;
    auto free = comp.free_axes(s.chart);
    sub.dim = static_cast<int>(free.size());
    for (int b = 0; b < sub.dim; ++b) {
        sub.lo[b] = s.chart.lo[free[b]];
        sub.hi[b] = s.chart.hi[free[b]];
        sub.periodic[b] = s.chart.periodic[free[b]];
        sub.coord_names.push_back(s.chart.coord_names[free[b]]);
        for (const auto& ex : s.chart.excluded)
            if (ex.axis == free[b]) sub.excluded.push_back({b, ex.at});
    }
    sub.excluded_band = s.chart.excluded_band;
    return sub;
}

}  // namespace

FormField restrict_to_component(const Scenario& s, const FixedComponent& comp,
                                const FormField& f) {
    auto free = comp.free_axes(s.chart);
    FormField out;
    out.dim = static_cast<int>(free.size());
    out.max_order = f.max_order;
    out.eval = [chart = s.chart, comp, free, f](const Pt& u, int order) {
        Pt amb = comp.ambient_point(chart, u);
        FormValue w = f(amb, order);
        const int cd = static_cast<int>(free.size());
        FormValue r(std::max(cd, 1), order);
        for (unsigned cm = 0; cm < (1u << cd); ++cm) {
            unsigned am = 0;
            for (int b = 0; b < cd; ++b)
                if (cm & (1u << b)) am |= 1u << free[b];
            r.coef(cm) = restrict_jet(w.coef(am), free);
        }
        return r;
    };
    return out;
}

RhsResult localization_rhs(const Scenario& s, const TwistPair& pair,
                           std::span<const FixedComponent> comps, const FormField& eta) {
    if (!pair.commuting)
        raise(ErrorKind::Precondition, "localization requires a commuting pair ([X,Y] = 0)");
    if (comps.empty())
        raise(ErrorKind::Precondition,
              "empty zero set on '" + s.name + "': the localization sum has no terms "
              "(the decay route applies instead)");

    const Complex I(0.0, 1.0);
    RhsResult out;
    for (const auto& comp : comps) {
        const int n = static_cast<int>(comp.mu_x.rows());
        Eigen::MatrixXcd a = -(comp.mu_x.cast<Complex>()) - I * comp.mu_y.cast<Complex>();
        a /= 2.0 * M_PI;
        const Complex pf_const = pfaffian(SkewComplexMatrix::from_dense(a));
        if (std::abs(pf_const) < 1e-14)
            raise(ErrorKind::Precondition,
                  "component '" + comp.id + "': -mu(X) - i mu(Y) is singular (degenerate "
                  "component)");

        ComponentContribution part;
        part.id = comp.id;

        if (comp.kind == FixedComponent::Kind::IsolatedPoint) {
            Pt amb = comp.ambient_point(s.chart, Pt{});
            const Complex num = eta(amb, 0).coef(0).value();
            part.value = static_cast<double>(comp.orientation_sign) * num / pf_const;
        } else {
            Chart sub = component_chart(s, comp);
            auto free = comp.free_axes(s.chart);
            const int cd = sub.dim;
            FormField eta_r = restrict_to_component(s, comp, eta);

            // bind curvature expressions once
            struct CurvEntry {
                int a, b, mask;
                Expression coef;
            };
            std::vector<CurvEntry> curv;
            for (const auto& e : comp.normal_curvature)
                curv.push_back({e.a, e.b, (1 << e.i) | (1 << e.j), e.coef});

            auto density = [&](const Pt& u) -> Complex {
                FormValue ev = eta_r(u, 0);
                // Pf[(A + R_normal)/2pi] as a form on the component
                auto coords = seed_point(u, cd, 0);
                std::span<const Jet> cs(coords.data(), cd);
                std::vector<FormValue> entries(n * n, FormValue(cd, 0));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        entries[i * n + j].coef(0) = Jet::constant(cd, 0, a(i, j));
                for (const auto& e : curv) {
                    Jet c = e.coef(cs) * Complex(1.0 / (2.0 * M_PI));
                    entries[e.a * n + e.b].coef(e.mask) += c;
                    entries[e.b * n + e.a].coef(e.mask) -= c;
                }
                FormValue pf = pfaffian_ring<FormValue>(
                    n, [&](int i, int j) { return entries[i * n + j]; },
                    FormValue::scalar(cd, 0, 1.0));
                return (ev * pf.inverse()).top();
            };

            IntegralResult ir = integrate_over_chart(
                sub, density, s.quad.component_nodes, s.quad.max_nodes,
                s.quad.max_total_nodes, s.quad.refine_rel);
            part.value = static_cast<double>(comp.orientation_sign) * ir.value;
            part.error_estimate = ir.error_estimate;
            (void)free;
        }
        out.parts.push_back(part);
    }
    for (const auto& p : out.parts) {
        out.total += p.value;
        out.error_estimate += p.error_estimate;
    }
    return out;
}

namespace {

// 200 seeded interior points: enough to certify the closedness
// precondition without re-deriving curvature-grade data on a full grid
double closedness_residual(const Scenario& s, const TwistPair& pair, const FormField& eta,
                           std::uint64_t seed) {
    auto samples = sample_interior(s.chart, 200, seed);
    return sup_abs(twisted_differential(pair, eta), samples);
}

}  // namespace

LocalizationReport verify_localization(const Scenario& s, const TwistPair& pair,
                                       const FormField& eta, const std::string& eta_label,
                                       std::uint64_t seed) {
    const double closed_resid = closedness_residual(s, pair, eta, seed);
    if (closed_resid > s.tol.op_abs)
        raise(ErrorKind::Precondition,
              "eta '" + eta_label + "' is not twisted-closed: residual " +
                  std::to_string(closed_resid));

    auto comps = find_zero_components(s, pair);
    IntegralResult lhs = integrate(s, eta);
    RhsResult rhs = localization_rhs(s, pair, comps, eta);

    LocalizationReport r;
    r.scenario = s.name;
    r.eta_label = eta_label;
    r.lhs = lhs.value;
    r.rhs = rhs.total;
    r.per_component = rhs.parts;
    r.abs_residual = std::abs(r.lhs - r.rhs);
    r.rel_residual = r.abs_residual / std::max(std::abs(r.lhs), 1e-30);
    r.quadrature_error_estimate = lhs.error_estimate + rhs.error_estimate;
    r.parameters["closedness_residual"] = closed_resid;
    r.parameters["integral_rel_tol"] = s.tol.integral_rel;
    r.parameters["lhs_nodes_per_axis"] = lhs.nodes_per_axis;
    r.pass = r.rel_residual < s.tol.integral_rel ||
             (r.abs_residual < 1e-10 && std::abs(r.lhs) < 1e-10);
    return r;
}

IntegralResult s_deformation_integral(const Scenario& s, const TwistPair& pair,
                                      const FormField& eta, GeneratorKind kind, double sval,
                                      std::uint64_t seed) {
    if (sval < 0.0)
        raise(ErrorKind::Precondition, "deformation parameter s must be >= 0");
    const double closed_resid = closedness_residual(s, pair, eta, seed);
    if (closed_resid > s.tol.op_abs)
        raise(ErrorKind::Precondition,
              "deformation input is not twisted-closed: residual " +
                  std::to_string(closed_resid));

    GeneratorForms gen = special_closed_form(s, pair, kind);
    FormField integrand = wedge(exp_form(Complex(-sval, 0.0) * gen.dbeta), eta);
    return integrate(s, integrand);
}

std::vector<Complex> s_deformation_sweep(const Scenario& s, const TwistPair& pair,
                                         const FormField& eta, GeneratorKind kind,
                                         std::span<const double> s_grid,
                                         std::uint64_t seed) {
    for (double sv : s_grid)
        if (sv < 0.0)
            raise(ErrorKind::Precondition, "deformation parameter s must be >= 0");
    if (!s.compact)
        raise(ErrorKind::Precondition,
              "scenario '" + s.name + "' is a non-compact chart: integrals are not defined");
    const double closed_resid = closedness_residual(s, pair, eta, seed);
    if (closed_resid > s.tol.op_abs)
        raise(ErrorKind::Precondition,
              "deformation input is not twisted-closed: residual " +
                  std::to_string(closed_resid));

    GeneratorForms gen = special_closed_form(s, pair, kind);
    const FormField dbeta = gen.dbeta;
    std::vector<double> grid(s_grid.begin(), s_grid.end());
    const double sign = s.orientation_sign;

    auto densities = [&dbeta, &eta, &grid, sign](const Pt& p, std::span<Complex> out) {
        FormValue db = dbeta(p, 0);
        FormValue ev = eta(p, 0);
        for (std::size_t k = 0; k < grid.size(); ++k)
            out[k] = sign * ((db * Complex(-grid[k], 0.0)).exp() * ev).top();
    };
    MultiIntegralResult m = integrate_over_chart_multi(
        s.chart, static_cast<int>(grid.size()), densities, s.quad.initial_nodes,
        s.quad.max_nodes, s.quad.max_total_nodes, s.quad.refine_rel);
    return m.values;
}

DecayProfile decay_profile(const Scenario& s, const TwistPair& pair, const FormField& eta,
                           std::span<const double> s_grid, std::uint64_t seed) {
    auto comps = find_zero_components(s, pair);
    if (!comps.empty())
        raise(ErrorKind::Precondition,
              "decay profile requires an empty zero set; '" + s.name + "' has " +
                  std::to_string(comps.size()) + " components");

    DecayProfile out;
    auto samples = s.residual_samples(seed);
    out.closedness_residual = sup_abs(twisted_differential(pair, eta), samples);
    out.eta_closed = out.closedness_residual < s.tol.op_abs;

    GeneratorForms gen = special_closed_form(s, pair, GeneratorKind::XminusIY);
    for (double sv : s_grid) {
        FormField integrand = wedge(exp_form(Complex(-sv, 0.0) * gen.dbeta), eta);
        out.values.emplace_back(sv, integrate(s, integrand).value);
    }

    out.integral_eta = integrate(s, eta).value;
    out.integral_vanishes = std::abs(out.integral_eta) < 1e-8;

    out.strictly_decreasing = true;
    for (std::size_t i = 1; i < out.values.size(); ++i) {
        const double prev = std::abs(out.values[i - 1].second);
        const double cur = std::abs(out.values[i].second);
        if (cur >= prev && !(cur < 1e-13 && prev < 1e-13))
            out.strictly_decreasing = false;
    }
    if (!out.values.empty())
        out.terminal_magnitude = std::abs(out.values.back().second);

    // least-squares fit of log|v| against s, skipped when values reach noise
    std::vector<std::pair<double, double>> pts;
    for (const auto& [sv, v] : out.values)
        if (std::abs(v) > 1e-13) pts.emplace_back(sv, std::log(std::abs(v)));
    if (pts.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (auto& [x, y] : pts) {
            sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        }
        const double m = static_cast<double>(pts.size());
        const double cov = sxy - sx * sy / m;
        const double vx = sxx - sx * sx / m;
        const double vy = syy - sy * sy / m;
        if (vx > 0 && vy > 0) {
            out.fit_slope = cov / vx;
            out.fit_r2 = (cov * cov) / (vx * vy);
            out.fit_valid = true;
        }
    }
    return out;
}

}  // namespace eqloc
