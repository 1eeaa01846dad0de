#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqloc/chart.hpp"
#include "eqloc/expr.hpp"
#include "eqloc/jet.hpp"

namespace eqloc {

using JetVec = std::array<Jet, 4>;
using JetMat = std::array<std::array<Jet, 4>, 4>;

enum class FieldSel { X, Y };

/// One entry of a declared normal-bundle curvature: the (a,b) matrix slot
/// carries coef * du_i ^ du_j in the component's own coordinates.
struct NormalCurvatureEntry {
    int a = 0, b = 0;
    int i = 0, j = 1;
    Expression coef;
};

/// A connected component of the common zero set of both fields, declared by
/// the scenario together with its normal-bundle data. The moment matrices
/// are given in an analytic orthonormal frame of the normal space (for
/// sphere poles that frame lives in embedded coordinates, which is why the
/// matrices are data rather than chart expressions).
struct FixedComponent {
    enum class Kind { IsolatedPoint, Submanifold };

    /// One pinned chart axis of the component slice. `degenerate` marks an
    /// axis pinned only because the coordinate degenerates there (the
    /// azimuth at a pole): such axes carry no location information and are
    /// skipped by distance checks.
    struct FixedAxis {
        int axis = 0;
        double value = 0.0;
        bool degenerate = false;
    };

    std::string id;
    Kind kind = Kind::IsolatedPoint;
    /// Slice description: the listed axes are pinned to the given values;
    /// the remaining axes parametrize the component.
    std::vector<FixedAxis> fixed_axes;
    Eigen::MatrixXd mu_x;  // skew, normal frame
    Eigen::MatrixXd mu_y;
    int orientation_sign = 1;  // frame (+) tangent orientation vs ambient
    std::vector<NormalCurvatureEntry> normal_curvature;  // empty: flat
    std::string frame_note;
    double approach = 1e-7;  // offset into the chart for slice evaluation

    std::vector<int> free_axes(const Chart& ambient) const;
    bool is_fixed_axis(int axis) const;
    /// Ambient point for a given assignment of the free axes, fixed axes
    /// nudged by `approach` into the domain interior.
    Pt ambient_point(const Chart& ambient, const Pt& component_pt) const;
};

struct SymplecticSpec {
    struct OmegaEntry {
        int i = 0, j = 1;
        Expression coef;  // coefficient of dx_i ^ dx_j, i < j
    };
    std::vector<OmegaEntry> omega;
    std::optional<Expression> h_x;  // absent: no global Hamiltonian
    std::optional<Expression> h_y;
};

struct QuadratureSpec {
    int initial_nodes = 16;          // per axis, doubled until agreement
    int max_nodes = 512;             // per-axis cap
    long max_total_nodes = 40000000; // total-evaluation guard
    int component_nodes = 16;        // per axis on submanifold components
    double refine_rel = 1e-9;        // successive-estimate agreement
};

struct Tolerances {
    double op_abs = 1e-8;        // operator identities (absolute)
    double integral_rel = 1e-6;  // integral agreement (relative)
};

/// Immutable description of one verification scene: a chart-based compact
/// oriented Riemannian manifold, two Killing fields, optional symplectic
/// data and the declared fixed-point structure. Construction (see
/// scenarios.hpp) validates every structural invariant; afterwards all
/// evaluations are pure functions of (scenario, point) and the object can
/// be shared freely across threads.
struct Scenario {
    std::string name;
    Chart chart;
    int orientation_sign = 1;  // chart coordinate orientation vs manifold
    bool compact = true;
    bool commuting = false;
    std::map<std::string, double> params;

    std::array<std::array<Expression, 4>, 4> metric;
    std::array<Expression, 4> field_x;
    std::array<Expression, 4> field_y;
    std::optional<SymplecticSpec> symplectic;
    std::vector<FixedComponent> components;

    QuadratureSpec quad;
    Tolerances tol;
    std::string config_text;  // serialized source document

    int dim() const { return chart.dim; }

    JetMat metric_jets(const Pt& p, int order) const;
    JetVec field_jets(FieldSel which, const Pt& p, int order) const;

    /// Value-semantic copy of the metric evaluator, safe to store in
    /// closures that may outlive this object.
    struct MetricEval {
        int dim = 0;
        std::array<std::array<Expression, 4>, 4> g;
        JetMat operator()(const Pt& p, int order) const;
    };
    MetricEval metric_eval() const { return MetricEval{dim(), metric}; }

    /// 200 seeded interior points plus the initial quadrature grid: the
    /// deterministic sample set residual sup-norms are taken over.
    std::vector<Pt> residual_samples(std::uint64_t seed, int n_random = 200) const;
};

/// A vector field bound to a chart, evaluated on jets. Complex components
/// are allowed so that linear combinations like X + iY are first-class.
struct VectorField {
    int dim = 0;
    std::string label;
    std::function<JetVec(const Pt&, int order)> eval;

    static VectorField from_scenario(const Scenario& s, FieldSel which);
    static VectorField zero(int dim);
    static VectorField combination(Complex a, const VectorField& u,
                                   Complex b, const VectorField& v);
};

/// The two commuting (or not) Killing fields the twisted differential is
/// built from.
struct TwistPair {
    VectorField X;
    VectorField Y;
    bool commuting = false;

    static TwistPair of(const Scenario& s);
};

}  // namespace eqloc
