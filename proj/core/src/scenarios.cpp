#include "eqloc/scenarios.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "eqloc/equivariant.hpp"
#include "eqloc/error.hpp"
#include "eqloc/forms.hpp"
#include "eqloc/geometry.hpp"
#include "eqloc/symplectic.hpp"
#include "eqloc/zeroset.hpp"

using nlohmann::json;

namespace eqloc {

namespace {

// rows of expression strings; explicit json::array avoids the brace-init
// pitfall where {string, string} pairs collapse into an object
json expr_matrix(const std::vector<std::vector<std::string>>& rows) {
    json m = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& e : r) row.push_back(e);
        m.push_back(row);
    }
    return m;
}

json sphere_chart(const std::string& suffix = "") {
    json j;
    j["coords"] = {"th" + suffix, "ph" + suffix};
    j["domain"] = {{0.0, M_PI}, {0.0, 2.0 * M_PI}};
    j["periodic"] = {false, true};
    j["excluded"] = json::array({{{"axis", 0}, {"at", 0.0}}, {{"axis", 0}, {"at", M_PI}}});
    return j;
}

json config_plane_cr() {
    json j;
    j["name"] = "plane_cr";
    j["kind"] = "plane";
    j["coords"] = {"x", "y"};
    j["domain"] = {{-1.0, 1.0}, {-1.0, 1.0}};
    j["periodic"] = {false, false};
    j["excluded"] = json::array();
    j["orientation"] = 1;
    j["compact"] = false;
    j["commuting"] = true;
    j["params"] = json::object();
    j["metric"] = expr_matrix({{"1", "0"}, {"0", "1"}});
    j["field_x"] = {"1", "0"};
    j["field_y"] = {"0", "1"};
    j["fixed_components"] = json::array();
    return j;
}

json config_torus() {
    json j;
    j["name"] = "torus2_translations";
    j["kind"] = "torus2";
    j["coords"] = {"u", "v"};
    j["domain"] = {{0.0, 2.0 * M_PI}, {0.0, 2.0 * M_PI}};
    j["periodic"] = {true, true};
    j["excluded"] = json::array();
    j["orientation"] = 1;
    j["compact"] = true;
    j["commuting"] = true;
    j["euler_characteristic"] = 0;
    j["params"] = json::object();
    j["metric"] = expr_matrix({{"1", "0"}, {"0", "1"}});
    j["field_x"] = {"1", "0"};
    j["field_y"] = {"0", "1"};
    // omega = du ^ dv is symplectic, but i_X omega = dv is not exact on the
    // torus: no global Hamiltonians exist and none are declared.
    j["symplectic"] = {{"omega", json::array({{{"i", 0}, {"j", 1}, {"coef", "1"}}})},
                       {"h_x", nullptr},
                       {"h_y", nullptr}};
    j["fixed_components"] = json::array();
    return j;
}

json pole_component(const std::string& id, double th_value, const std::string& mu_entry,
                    const std::string& mu_y_entry, int sign) {
    json c;
    c["id"] = id;
    c["kind"] = "isolated";
    c["fixed"] = json::array({{{"axis", 0}, {"value", th_value}},
                              {{"axis", 1}, {"value", 0.0}, {"degenerate", true}}});
    c["mu_x"] = expr_matrix({{"0", mu_entry}, {"-(" + mu_entry + ")", "0"}});
    c["mu_y"] = expr_matrix({{"0", mu_y_entry}, {"-(" + mu_y_entry + ")", "0"}});
    c["orientation_sign"] = sign;
    c["frame"] = "embedded tangent-plane frame at the pole";
    return c;
}

json config_sphere(bool two_rotations) {
    json j = sphere_chart();
    j["name"] = two_rotations ? "sphere2_two_rotations" : "sphere2_rotation";
    j["kind"] = "sphere2";
    j["orientation"] = 1;
    j["compact"] = true;
    j["commuting"] = true;
    j["euler_characteristic"] = 2;
    // eps deforms the metric conformally by (1 + eps sin^2 th) while keeping
    // d/dph Killing and the poles untouched; eps = 0 is the round sphere.
    j["params"] = {{"t", 1.0}, {"c", two_rotations ? 1.0 : 0.0}, {"eps", 0.0}};
    j["metric"] = expr_matrix({{"1+eps*sin(th)*sin(th)", "0"},
                               {"0", "(1+eps*sin(th)*sin(th))*sin(th)*sin(th)"}});
    j["field_x"] = {"0", "t"};
    j["field_y"] = {"0", two_rotations ? "c*t" : "0"};
    j["symplectic"] = {{"omega", json::array({{{"i", 0}, {"j", 1}, {"coef", "sin(th)"}}})},
                       {"h_x", "t*cos(th)"},
                       {"h_y", two_rotations ? "c*t*cos(th)" : "0"}};
    const std::string mu_y = two_rotations ? "c*t" : "0";
    j["fixed_components"] =
        json::array({pole_component("north", 0.0, "t", mu_y, 1),
                     pole_component("south", M_PI, "t", mu_y, -1)});
    return j;
}

json product_chart() {
    json j;
    j["coords"] = {"th1", "ph1", "th2", "ph2"};
    j["domain"] = {{0.0, M_PI}, {0.0, 2.0 * M_PI}, {0.0, M_PI}, {0.0, 2.0 * M_PI}};
    j["periodic"] = {false, true, false, true};
    j["excluded"] = json::array({{{"axis", 0}, {"at", 0.0}},
                                 {{"axis", 0}, {"at", M_PI}},
                                 {{"axis", 2}, {"at", 0.0}},
                                 {{"axis", 2}, {"at", M_PI}}});
    j["metric"] = expr_matrix({{"1", "0", "0", "0"},
                               {"0", "sin(th1)*sin(th1)", "0", "0"},
                               {"0", "0", "1", "0"},
                               {"0", "0", "0", "sin(th2)*sin(th2)"}});
    return j;
}

json config_product_s2xs2() {
    json j = product_chart();
    j["name"] = "product_s2xs2";
    j["kind"] = "product";
    j["orientation"] = 1;
    j["compact"] = true;
    j["commuting"] = true;
    j["euler_characteristic"] = 4;
    j["params"] = {{"t1", 1.0}, {"t2", 1.0}, {"c", 0.5}};
    j["field_x"] = {"0", "t1", "0", "t2"};
    j["field_y"] = {"0", "c*t1", "0", "c*t2"};
    j["symplectic"] = {
        {"omega", json::array({{{"i", 0}, {"j", 1}, {"coef", "sin(th1)"}},
                               {{"i", 2}, {"j", 3}, {"coef", "sin(th2)"}}})},
        {"h_x", "t1*cos(th1)+t2*cos(th2)"},
        {"h_y", "c*(t1*cos(th1)+t2*cos(th2))"}};

    auto pole_pair = [&](const std::string& id, double th1, double th2, int sign) {
        json c;
        c["id"] = id;
        c["kind"] = "isolated";
        c["fixed"] = json::array({{{"axis", 0}, {"value", th1}},
                                  {{"axis", 1}, {"value", 0.0}, {"degenerate", true}},
                                  {{"axis", 2}, {"value", th2}},
                                  {{"axis", 3}, {"value", 0.0}, {"degenerate", true}}});
        c["mu_x"] = expr_matrix({{"0", "t1", "0", "0"},
                                 {"-t1", "0", "0", "0"},
                                 {"0", "0", "0", "t2"},
                                 {"0", "0", "-t2", "0"}});
        c["mu_y"] = expr_matrix({{"0", "c*t1", "0", "0"},
                                 {"-c*t1", "0", "0", "0"},
                                 {"0", "0", "0", "c*t2"},
                                 {"0", "0", "-c*t2", "0"}});
        c["orientation_sign"] = sign;
        c["frame"] = "product of embedded pole frames";
        return c;
    };
    j["fixed_components"] = json::array({pole_pair("NN", 0.0, 0.0, 1),
                                         pole_pair("NS", 0.0, M_PI, -1),
                                         pole_pair("SN", M_PI, 0.0, -1),
                                         pole_pair("SS", M_PI, M_PI, 1)});
    j["quadrature"] = {{"initial_nodes", 12}, {"component_nodes", 16}, {"max_nodes", 96}};
    j["tolerances"] = {{"integral_rel", 1e-5}};
    return j;
}

json config_product_positive_dim() {
    json j = product_chart();
    j["name"] = "product_positive_dim_M0";
    j["kind"] = "product";
    j["orientation"] = 1;
    j["compact"] = true;
    j["commuting"] = true;
    j["euler_characteristic"] = 4;
    j["params"] = {{"t1", 1.0}, {"c", 0.5}};
    j["field_x"] = {"0", "t1", "0", "0"};
    j["field_y"] = {"0", "c*t1", "0", "0"};
    j["symplectic"] = {
        {"omega", json::array({{{"i", 0}, {"j", 1}, {"coef", "sin(th1)"}},
                               {{"i", 2}, {"j", 3}, {"coef", "sin(th2)"}}})},
        {"h_x", "t1*cos(th1)"},
        {"h_y", "c*t1*cos(th1)"}};

    auto sphere_slice = [&](const std::string& id, double th1, int sign) {
        json c;
        c["id"] = id;
        c["kind"] = "submanifold";
        c["fixed"] = json::array({{{"axis", 0}, {"value", th1}},
                                  {{"axis", 1}, {"value", 0.0}, {"degenerate", true}}});
        c["mu_x"] = expr_matrix({{"0", "t1"}, {"-t1", "0"}});
        c["mu_y"] = expr_matrix({{"0", "c*t1"}, {"-c*t1", "0"}});
        c["orientation_sign"] = sign;
        c["frame"] = "embedded pole frame of the first factor";
        // normal bundle is the pulled-back tangent plane of a point: flat
        c["normal_curvature"] = json::array();
        return c;
    };
    j["fixed_components"] =
        json::array({sphere_slice("north_s2", 0.0, 1), sphere_slice("south_s2", M_PI, -1)});
    j["quadrature"] = {{"initial_nodes", 12}, {"component_nodes", 16}, {"max_nodes", 96}};
    j["tolerances"] = {{"integral_rel", 1e-5}};
    return j;
}

json catalog_config(const std::string& name) {
    if (name == "plane_cr") return config_plane_cr();
    if (name == "torus2_translations") return config_torus();
    if (name == "sphere2_rotation") return config_sphere(false);
    if (name == "sphere2_two_rotations") return config_sphere(true);
    if (name == "product_s2xs2") return config_product_s2xs2();
    if (name == "product_positive_dim_M0") return config_product_positive_dim();
    raise(ErrorKind::Argument, "scenario-not-found: unknown built-in scenario '" + name + "'");
}

double eval_const(const std::string& text, const std::map<std::string, double>& params) {
    Expression e = Expression::parse(text, {});
    e.bind(params);
    return e.value_at(Pt{}, 1);
}

Scenario build_from_json(const json& j);

void validate_numerics(Scenario& s) {
    TwistPair pair = TwistPair::of(s);
    auto samples = s.residual_samples(0xC0FFEE);

    // metric SPD everywhere sampled
    for (const Pt& p : samples) (void)metric_at(s, p);

    // Killing property of both fields
    const double kx = killing_residual(s, pair.X, samples);
    const double ky = killing_residual(s, pair.Y, samples);
    if (kx > s.tol.op_abs || ky > s.tol.op_abs)
        raise(ErrorKind::Definition,
              "scenario '" + s.name + "': Killing residual too large (|L_X g| = " +
                  std::to_string(kx) + ", |L_Y g| = " + std::to_string(ky) + ")");

    if (s.commuting) {
        const double comm = commutator_residual(s, pair, samples);
        if (comm > s.tol.op_abs)
            raise(ErrorKind::Definition,
                  "scenario '" + s.name +
                      "': commuting declared but the Lemma 4 commutator residual is " +
                      std::to_string(comm));
    }

    if (s.symplectic) {
        auto sd = symplectic_data(s);
        const double domega = sup_abs(exterior_derivative(sd->omega), samples);
        if (domega > 1e-10)
            raise(ErrorKind::Definition,
                  "scenario '" + s.name + "': omega is not closed (|d omega| = " +
                      std::to_string(domega) + ")");
        if (s.compact) {
            // nondegeneracy: omega^n has a top coefficient bounded away from 0
            double min_top = std::numeric_limits<double>::infinity();
            for (const Pt& p : samples) {
                FormValue w = sd->omega(p, 0);
                FormValue power = FormValue::scalar(s.dim(), 0, 1.0);
                for (int k = 0; k < sd->n; ++k) power = power * w;
                min_top = std::min(min_top, std::abs(power.top()));
            }
            if (min_top < 1e-8)
                raise(ErrorKind::Definition,
                      "scenario '" + s.name + "': omega^n degenerates on the sample set (min " +
                          std::to_string(min_top) + ")");
        }
        if (sd->has_hamiltonians) {
            ResidualReport hr = hamiltonian_residual(s, *sd);
            if (!hr.pass)
                raise(ErrorKind::Definition,
                      "scenario '" + s.name + "': Hamiltonian residual " +
                          std::to_string(hr.max_residual) + " exceeds 1e-9");
        }
    }

    for (const auto& comp : s.components) validate_component(s, pair, comp);
}

Scenario build_from_json(const json& j) {
    Scenario s;
    try {
        s.name = j.at("name").get<std::string>();
        const auto& coords = j.at("coords");
        s.chart.id = s.name;
        s.chart.dim = static_cast<int>(coords.size());
        if (s.chart.dim < 1 || s.chart.dim > kMaxDim)
            raise(ErrorKind::Definition, "dimension must be between 1 and 4");
        if (s.chart.dim % 2 != 0)
            raise(ErrorKind::Definition,
                  "total dimension must be even (got " + std::to_string(s.chart.dim) + ")");
        for (const auto& c : coords) s.chart.coord_names.push_back(c.get<std::string>());

        const auto& dom = j.at("domain");
        for (int i = 0; i < s.chart.dim; ++i) {
            s.chart.lo[i] = dom.at(i).at(0).get<double>();
            s.chart.hi[i] = dom.at(i).at(1).get<double>();
            if (!(s.chart.hi[i] > s.chart.lo[i]))
                raise(ErrorKind::Definition, "domain box must have positive volume");
        }
        if (j.contains("periodic"))
            for (int i = 0; i < s.chart.dim; ++i)
                s.chart.periodic[i] = j.at("periodic").at(i).get<bool>();
        if (j.contains("excluded"))
            for (const auto& ex : j.at("excluded"))
                s.chart.excluded.push_back(
                    {ex.at("axis").get<int>(), ex.at("at").get<double>()});
        if (j.contains("excluded_band"))
            s.chart.excluded_band = j.at("excluded_band").get<double>();

        s.orientation_sign = j.value("orientation", 1);
        s.compact = j.value("compact", true);
        s.commuting = j.value("commuting", false);
        if (j.contains("params"))
            for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
                s.params[it.key()] = it.value().get<double>();

        auto parse_bound = [&](const std::string& text) {
            Expression e = Expression::parse(text, s.chart.coord_names);
            e.bind(s.params);
            return e;
        };

        const auto& gm = j.at("metric");
        for (int i = 0; i < s.chart.dim; ++i)
            for (int k = 0; k < s.chart.dim; ++k)
                s.metric[i][k] = parse_bound(gm.at(i).at(k).get<std::string>());
        for (int i = 0; i < s.chart.dim; ++i) {
            s.field_x[i] = parse_bound(j.at("field_x").at(i).get<std::string>());
            s.field_y[i] = parse_bound(j.at("field_y").at(i).get<std::string>());
        }

        if (j.contains("symplectic") && !j.at("symplectic").is_null()) {
            const auto& sy = j.at("symplectic");
            SymplecticSpec spec;
            for (const auto& e : sy.at("omega")) {
                SymplecticSpec::OmegaEntry oe;
                oe.i = e.at("i").get<int>();
                oe.j = e.at("j").get<int>();
                if (oe.i >= oe.j)
                    raise(ErrorKind::Definition, "omega entries must have i < j");
                oe.coef = parse_bound(e.at("coef").get<std::string>());
                spec.omega.push_back(oe);
            }
            if (sy.contains("h_x") && !sy.at("h_x").is_null())
                spec.h_x = parse_bound(sy.at("h_x").get<std::string>());
            if (sy.contains("h_y") && !sy.at("h_y").is_null())
                spec.h_y = parse_bound(sy.at("h_y").get<std::string>());
            s.symplectic = std::move(spec);
        }

        if (j.contains("fixed_components")) {
            for (const auto& c : j.at("fixed_components")) {
                FixedComponent fc;
                fc.id = c.at("id").get<std::string>();
                fc.kind = c.at("kind").get<std::string>() == "submanifold"
                              ? FixedComponent::Kind::Submanifold
                              : FixedComponent::Kind::IsolatedPoint;
                for (const auto& fa : c.at("fixed"))
                    fc.fixed_axes.push_back({fa.at("axis").get<int>(),
                                             fa.at("value").get<double>(),
                                             fa.value("degenerate", false)});
                const auto& mx = c.at("mu_x");
                const int n = static_cast<int>(mx.size());
                fc.mu_x.resize(n, n);
                fc.mu_y.resize(n, n);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        fc.mu_x(a, b) = eval_const(mx.at(a).at(b).get<std::string>(), s.params);
                        fc.mu_y(a, b) =
                            eval_const(c.at("mu_y").at(a).at(b).get<std::string>(), s.params);
                    }
                fc.orientation_sign = c.value("orientation_sign", 1);
                fc.frame_note = c.value("frame", "");
                if (c.contains("approach")) fc.approach = c.at("approach").get<double>();
                if (c.contains("normal_curvature")) {
                    // component-coordinate names: the free axes keep theirs
                    std::vector<std::string> cnames;
                    for (int i = 0; i < s.chart.dim; ++i)
                        if (!fc.is_fixed_axis(i)) cnames.push_back(s.chart.coord_names[i]);
                    for (const auto& e : c.at("normal_curvature")) {
                        NormalCurvatureEntry ne;
                        ne.a = e.at("a").get<int>();
                        ne.b = e.at("b").get<int>();
                        ne.i = e.at("i").get<int>();
                        ne.j = e.at("j").get<int>();
                        Expression ex = Expression::parse(e.at("coef").get<std::string>(), cnames);
                        ex.bind(s.params);
                        ne.coef = ex;
                        fc.normal_curvature.push_back(ne);
                    }
                }
                s.components.push_back(std::move(fc));
            }
        }

        if (j.contains("quadrature")) {
            const auto& q = j.at("quadrature");
            s.quad.initial_nodes = q.value("initial_nodes", s.quad.initial_nodes);
            s.quad.max_nodes = q.value("max_nodes", s.quad.max_nodes);
            s.quad.component_nodes = q.value("component_nodes", s.quad.component_nodes);
        }
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            s.tol.op_abs = t.value("operator_abs", s.tol.op_abs);
            s.tol.integral_rel = t.value("integral_rel", s.tol.integral_rel);
        }
    } catch (const json::exception& e) {
        raise(ErrorKind::Parse, std::string("config document malformed: ") + e.what());
    } catch (const std::invalid_argument& e) {
        raise(ErrorKind::Parse, e.what());
    }

    s.config_text = j.dump(2);
    validate_numerics(s);
    return s;
}

}  // namespace

std::vector<std::string> builtin_names() {
    return {"plane_cr",        "torus2_translations",  "sphere2_rotation",
            "sphere2_two_rotations", "product_s2xs2", "product_positive_dim_M0"};
}

Scenario builtin(const std::string& name, const std::map<std::string, double>& overrides) {
    json j = catalog_config(name);
    for (const auto& [k, v] : overrides) {
        if (!j.at("params").contains(k))
            raise(ErrorKind::Argument,
                  "scenario '" + name + "' has no parameter '" + k + "'");
        j["params"][k] = v;
    }
    return build_from_json(j);
}

Scenario load_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
    }
    return build_from_json(j);
}

std::string serialize(const Scenario& s) { return s.config_text; }

std::optional<int> euler_characteristic(const Scenario& s) {
    json j = json::parse(s.config_text);
    if (j.contains("euler_characteristic"))
        return j.at("euler_characteristic").get<int>();
    return std::nullopt;
}

}  // namespace eqloc
