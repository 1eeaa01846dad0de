#include "eqloc/symplectic.hpp"

#include <cmath>

#include "eqloc/error.hpp"

namespace eqloc {

std::optional<SymplecticData> symplectic_data(const Scenario& s) {
    if (!s.symplectic) return std::nullopt;
    const auto& spec = *s.symplectic;
    const int d = s.dim();

    SymplecticData sd;
    sd.n = d / 2;
    struct Entry {
        unsigned mask;
        Expression coef;
    };
    std::vector<Entry> entries;
    for (const auto& e : spec.omega)
        entries.push_back({(1u << e.i) | (1u << e.j), e.coef});
    sd.omega.dim = d;
    sd.omega.eval = [entries, d](const Pt& p, int order) {
        auto coords = seed_point(p, d, order);
        std::span<const Jet> cs(coords.data(), d);
        FormValue w(d, order);
        for (const auto& e : entries) w.coef(e.mask) += e.coef(cs);
        return w;
    };

    sd.has_hamiltonians = spec.h_x.has_value() && spec.h_y.has_value();
    if (sd.has_hamiltonians) {
        auto make_scalar = [d](const Expression& ex) {
            FormField f;
            f.dim = d;
            f.eval = [ex, d](const Pt& p, int order) {
                auto coords = seed_point(p, d, order);
                std::span<const Jet> cs(coords.data(), d);
                FormValue w(d, order);
                w.coef(0) = ex(cs);
                return w;
            };
            return f;
        };
        sd.h_x = make_scalar(*spec.h_x);
        sd.h_y = make_scalar(*spec.h_y);
    }
    return sd;
}

ResidualReport hamiltonian_residual(const Scenario& s, const SymplecticData& sd,
                                    std::uint64_t seed) {
    auto samples = s.residual_samples(seed);
    TwistPair pair = TwistPair::of(s);

    ResidualReport r;
    r.name = "hamiltonian";
    r.tolerance = 1e-9;
    r.parts.emplace_back("|d omega|", sup_abs(exterior_derivative(sd.omega), samples));
    if (!sd.has_hamiltonians) {
        r.note = "no global Hamiltonians declared (i_X omega not exact); "
                 "energy-function checks not applicable";
        r.max_residual = r.parts[0].second;
        r.pass = r.max_residual < r.tolerance;
        return r;
    }
    FormField rx = exterior_derivative(sd.h_x) - interior_product(pair.X, sd.omega);
    FormField ry = exterior_derivative(sd.h_y) - interior_product(pair.Y, sd.omega);
    r.parts.emplace_back("|dH_X - i_X omega|", sup_abs(rx, samples));
    r.parts.emplace_back("|dH_Y - i_Y omega|", sup_abs(ry, samples));
    for (const auto& [_, v] : r.parts) r.max_residual = std::max(r.max_residual, v);
    r.pass = r.max_residual < r.tolerance;
    return r;
}

FormField equivariant_symplectic(const SymplecticData& sd) {
    if (!sd.has_hamiltonians)
        raise(ErrorKind::Precondition,
              "equivariant symplectic extension needs both Hamiltonians");
    const Complex I(0.0, 1.0);
    return sd.omega - sd.h_x - I * sd.h_y;
}

DhReport verify_dh(const Scenario& s, const TwistPair& pair, std::uint64_t seed) {
    auto sdo = symplectic_data(s);
    if (!sdo)
        raise(ErrorKind::Precondition, "scenario '" + s.name + "' has no symplectic block");
    const SymplecticData& sd = *sdo;
    if (!sd.has_hamiltonians)
        raise(ErrorKind::Precondition,
              "scenario '" + s.name + "' declares no Hamiltonians (i_X omega not exact)");

    FormField eta = exp_form(equivariant_symplectic(sd));

    DhReport out;
    out.theorem = verify_localization(s, pair, eta, "exp(omega - H_X - i H_Y)", seed);

    // literal reading: numerator exp(omega), gauge pinned at the first
    // declared component so that exp(-H) = 1 there
    auto comps = find_zero_components(s, pair);
    const Complex I(0.0, 1.0);
    Pt first = comps.front().ambient_point(s.chart, Pt{});
    const Complex hx0 = sd.h_x(first, 0).coef(0).value();
    const Complex hy0 = sd.h_y(first, 0).coef(0).value();
    out.gauge_shift = hx0 + I * hy0;
    out.lhs_gauged = out.theorem.lhs * std::exp(out.gauge_shift);
    out.rhs_literal = localization_rhs(s, pair, comps, exp_form(sd.omega)).total;

    const double tol = s.tol.integral_rel;
    const bool classical = out.theorem.pass;
    const bool literal =
        std::abs(out.lhs_gauged - out.rhs_literal) <
        tol * std::max({std::abs(out.lhs_gauged), std::abs(out.rhs_literal), 1e-30});
    out.matched_reading = classical && literal ? "both"
                          : classical          ? "classical"
                          : literal            ? "literal"
                                               : "neither";
    out.theorem.parameters["gauge_shift_re"] = out.gauge_shift.real();
    out.theorem.parameters["gauge_shift_im"] = out.gauge_shift.imag();
    return out;
}

}  // namespace eqloc
