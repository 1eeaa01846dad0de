#pragma once

#include <Eigen/Dense>

#include "eqloc/scenario.hpp"

namespace eqloc {

/// Metric evaluated at a chart point; symmetric by construction and checked
/// positive definite. Raises Domain outside the box, Definition if not SPD.
Eigen::MatrixXd metric_at(const Scenario& s, const Pt& p);

struct ChristoffelValues {
    int dim = 0;
    // gamma[k][i][j] = Gamma^k_{ij}, symmetric in (i, j)
    std::array<std::array<std::array<double, 4>, 4>, 4> gamma{};
};
ChristoffelValues christoffel_at(const Scenario& s, const Pt& p);

struct RiemannValues {
    int dim = 0;
    // lowered[i][j][k][l] = < R(d_k, d_l) d_j , d_i >_g with the curvature
    // operator R(U,V) = nabla_U nabla_V - nabla_V nabla_U - nabla_[U,V].
    // Sign calibration: on the round 2-sphere lowered[th][ph][th][ph] =
    // sin^2(th), and the Euler form Pf(Omega/2pi) built from this operator
    // integrates to chi.
    std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> lowered{};
};
RiemannValues riemann_at(const Scenario& s, const Pt& p);

/// nabla_v W in chart components.
Eigen::VectorXd covariant_derivative(const Scenario& s, const VectorField& w,
                                     const Eigen::VectorXd& direction, const Pt& p);

// ---- jet-level building blocks shared with the characteristic module ----

/// Inverse of a symmetric positive-definite jet matrix (Gauss-Jordan,
/// diagonal pivots).
JetMat invert_spd(const JetMat& g, int dim);

struct ChristoffelJets {
    int dim = 0;
    std::array<std::array<std::array<Jet, 4>, 4>, 4> gamma;  // [k][i][j]
};
/// Christoffel symbols as jets of the requested order (consumes metric jets
/// one order higher).
ChristoffelJets christoffel_jets(const Scenario& s, const Pt& p, int order);

struct CurvatureJets {
    int dim = 0;
    // endo[m][j][k][l] = coefficient of d_m in R(d_k, d_l) d_j
    std::array<std::array<std::array<std::array<Jet, 4>, 4>, 4>, 4> endo;
};
CurvatureJets curvature_jets(const Scenario& s, const Pt& p, int order);

/// Positively-oriented orthonormal frame by Gram-Schmidt on the coordinate
/// frame; frame[a][i] is the i-th chart component of e_a.
std::array<JetVec, 4> orthonormal_frame(const Scenario& s, const JetMat& g, int order);

/// g-inner product of jet vectors.
Jet metric_inner(const JetMat& g, const JetVec& u, const JetVec& v, int dim);

/// Guard shared by the differential-geometry evaluations: raises Domain when
/// the point is outside the box or within the excluded band of a coordinate
/// singularity.
void require_regular(const Scenario& s, const Pt& p);

}  // namespace eqloc
