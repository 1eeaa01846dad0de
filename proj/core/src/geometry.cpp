#include "eqloc/geometry.hpp"

#include <cmath>

#include "eqloc/error.hpp"

namespace eqloc {

void require_regular(const Scenario& s, const Pt& p) {
    if (!s.chart.in_domain(p))
        raise(ErrorKind::Domain, "point outside chart domain of '" + s.name + "'");
    if (s.chart.near_excluded(p, 1e-12))
        raise(ErrorKind::Domain, "point lies on a coordinate-singular locus of '" + s.name + "'");
}

Eigen::MatrixXd metric_at(const Scenario& s, const Pt& p) {
    if (!s.chart.in_domain(p))
        raise(ErrorKind::Domain, "point outside chart domain of '" + s.name + "'");
    const int d = s.dim();
    JetMat g = s.metric_jets(p, 0);
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = g[i][j].value().real();
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        raise(ErrorKind::Definition,
              "metric not positive definite at a sampled point of '" + s.name + "'");
    return m;
}

JetMat invert_spd(const JetMat& g, int dim) {
    // Gauss-Jordan with diagonal pivots; valid for SPD jet matrices.
    JetMat a = g;
    JetMat inv;
    const Jet& probe = g[0][0];
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            inv[i][j] = Jet::constant(probe.dim(), probe.order(), i == j ? 1.0 : 0.0);

    for (int col = 0; col < dim; ++col) {
        Jet pivot = a[col][col];
        for (int j = 0; j < dim; ++j) {
            if (!a[col][j].is_zero()) a[col][j] = a[col][j] / pivot;
            if (!inv[col][j].is_zero()) inv[col][j] = inv[col][j] / pivot;
        }
        for (int row = 0; row < dim; ++row) {
            if (row == col) continue;
            Jet factor = a[row][col];
            if (factor.is_zero()) continue;
            for (int j = 0; j < dim; ++j) {
                a[row][j] -= factor * a[col][j];
                inv[row][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

ChristoffelJets christoffel_jets(const Scenario& s, const Pt& p, int order) {
    const int d = s.dim();
    JetMat g = s.metric_jets(p, order + 1);
    JetMat ginv_hi = invert_spd(g, d);

    // dg[k][i][j] = d_k g_ij at the requested order
    std::array<std::array<std::array<Jet, 4>, 4>, 4> dg;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) dg[k][i][j] = g[i][j].derivative(k);

    JetMat ginv;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) ginv[i][j] = ginv_hi[i][j].truncated(order);

    ChristoffelJets out;
    out.dim = d;
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                Jet sum = Jet::constant(d, order, 0.0);
                for (int l = 0; l < d; ++l)
                    sum += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                sum *= Complex(0.5);
                out.gamma[k][i][j] = sum;
                out.gamma[k][j][i] = sum;
            }
    return out;
}

ChristoffelValues christoffel_at(const Scenario& s, const Pt& p) {
    require_regular(s, p);
    ChristoffelJets j = christoffel_jets(s, p, 0);
    ChristoffelValues out;
    out.dim = j.dim;
    for (int k = 0; k < j.dim; ++k)
        for (int i = 0; i < j.dim; ++i)
            for (int l = 0; l < j.dim; ++l)
                out.gamma[k][i][l] = j.gamma[k][i][l].value().real();
    return out;
}

CurvatureJets curvature_jets(const Scenario& s, const Pt& p, int order) {
    const int d = s.dim();
    ChristoffelJets cj = christoffel_jets(s, p, order + 1);

    CurvatureJets out;
    out.dim = d;
    // R(d_k, d_l) d_j = (d_k Gamma^m_lj - d_l Gamma^m_kj
    //                    + Gamma^m_kp Gamma^p_lj - Gamma^m_lp Gamma^p_kj) d_m,
    // antisymmetric in (k, l)
    const Jet zero = Jet::constant(d, order, 0.0);
    for (int m = 0; m < d; ++m)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                out.endo[m][j][k][k] = zero;
                for (int l = k + 1; l < d; ++l) {
                    Jet sum = cj.gamma[m][l][j].derivative(k) - cj.gamma[m][k][j].derivative(l);
                    for (int q = 0; q < d; ++q) {
                        if (!cj.gamma[m][k][q].is_zero() && !cj.gamma[q][l][j].is_zero())
                            sum += (cj.gamma[m][k][q] * cj.gamma[q][l][j]).truncated(order);
                        if (!cj.gamma[m][l][q].is_zero() && !cj.gamma[q][k][j].is_zero())
                            sum -= (cj.gamma[m][l][q] * cj.gamma[q][k][j]).truncated(order);
                    }
                    out.endo[m][j][k][l] = sum;
                    out.endo[m][j][l][k] = -sum;
                }
            }
    return out;
}

RiemannValues riemann_at(const Scenario& s, const Pt& p) {
    require_regular(s, p);
    const int d = s.dim();
    CurvatureJets cj = curvature_jets(s, p, 0);
    JetMat g = s.metric_jets(p, 0);

    RiemannValues out;
    out.dim = d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    Complex sum = 0.0;
                    for (int m = 0; m < d; ++m)
                        sum += g[i][m].value() * cj.endo[m][j][k][l].value();
                    out.lowered[i][j][k][l] = sum.real();
                }
    return out;
}

Eigen::VectorXd covariant_derivative(const Scenario& s, const VectorField& w,
                                     const Eigen::VectorXd& direction, const Pt& p) {
    require_regular(s, p);
    const int d = s.dim();
    ChristoffelJets cj = christoffel_jets(s, p, 0);
    JetVec wj = w.eval(p, 1);

    Eigen::VectorXd out(d);
    for (int k = 0; k < d; ++k) {
        Complex sum = 0.0;
        for (int i = 0; i < d; ++i) {
            Complex di = wj[k].partial(i);
            for (int m = 0; m < d; ++m)
                di += cj.gamma[k][i][m].value() * wj[m].value();
            sum += direction(i) * di;
        }
        out(k) = sum.real();
    }
    return out;
}

Jet metric_inner(const JetMat& g, const JetVec& u, const JetVec& v, int dim) {
    Jet sum = Jet::constant(u[0].dim(), u[0].order(), 0.0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) sum += g[i][j] * u[i] * v[j];
    return sum;
}

std::array<JetVec, 4> orthonormal_frame(const Scenario& s, const JetMat& g, int order) {
    const int d = s.dim();
    std::array<JetVec, 4> e;
    for (int a = 0; a < d; ++a) {
        JetVec v;
        for (int i = 0; i < d; ++i)
            v[i] = Jet::constant(d, order, i == a ? 1.0 : 0.0);
        for (int b = 0; b < a; ++b) {
            Jet proj = metric_inner(g, v, e[b], d);
            for (int i = 0; i < d; ++i) v[i] -= proj * e[b][i];
        }
        Jet nrm = sqrt(metric_inner(g, v, v, d));
        for (int i = 0; i < d; ++i) v[i] = v[i] / nrm;
        e[a] = v;
    }
    // Gram-Schmidt on the coordinate order keeps the frame positively
    // oriented whenever the chart itself is; a negatively-oriented chart
    // flips the last leg.
    if (s.orientation_sign < 0)
        for (int i = 0; i < d; ++i) e[d - 1][i] = -e[d - 1][i];
    return e;
}

}  // namespace eqloc
