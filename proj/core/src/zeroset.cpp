#include "eqloc/zeroset.hpp"

#include <algorithm>
#include <cmath>

#include "eqloc/error.hpp"

namespace eqloc {

SkewComplexMatrix::SkewComplexMatrix(int n) : n_(n), upper_(n * (n - 1) / 2, Complex(0.0)) {}

SkewComplexMatrix SkewComplexMatrix::from_upper(int n, std::span<const Complex> upper) {
    SkewComplexMatrix m(n);
    if (static_cast<int>(upper.size()) != n * (n - 1) / 2)
        raise(ErrorKind::Argument, "skew matrix: wrong strict-upper length");
    std::copy(upper.begin(), upper.end(), m.upper_.begin());
    return m;
}

SkewComplexMatrix SkewComplexMatrix::from_dense(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) raise(ErrorKind::Argument, "skew matrix: not square");
    const int n = static_cast<int>(a.rows());
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    SkewComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (std::abs(a(i, j) + a(j, i)) > 1e-13 * scale)
                raise(ErrorKind::Argument, "skew matrix: input not skew-symmetric");
            if (j > i) m.set(i, j, 0.5 * (a(i, j) - a(j, i)));
        }
    return m;
}

Complex SkewComplexMatrix::operator()(int i, int j) const {
    if (i == j) return 0.0;
    if (i < j) return upper_[i * n_ - i * (i + 1) / 2 + (j - i - 1)];
    return -(*this)(j, i);
}

void SkewComplexMatrix::set(int i, int j, Complex v) {
    upper_[i * n_ - i * (i + 1) / 2 + (j - i - 1)] = v;
}

Eigen::MatrixXcd SkewComplexMatrix::dense() const {
    Eigen::MatrixXcd out(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out(i, j) = (*this)(i, j);
    return out;
}

Complex pfaffian(const SkewComplexMatrix& a) {
    if (a.size() % 2 != 0) raise(ErrorKind::Argument, "pfaffian: odd size");
    return pfaffian_ring<Complex>(a.size(), [&](int i, int j) { return a(i, j); },
                                  Complex(1.0));
}

Complex pfaffian(const Eigen::MatrixXcd& a) {
    return pfaffian(SkewComplexMatrix::from_dense(a));
}

Eigen::MatrixXd moment_endomorphism(const Scenario& s, const VectorField& v, const Pt& p) {
    require_regular(s, p);
    const int d = s.dim();
    ChristoffelJets cj = christoffel_jets(s, p, 0);
    JetMat g = s.metric_jets(p, 0);
    auto frame = orthonormal_frame(s, g, 0);
    JetVec vj = v.eval(p, 1);

    // nabla[k][i] = (nabla_{d_i} V)^k
    std::array<std::array<Complex, 4>, 4> nabla{};
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
            Complex sum = vj[k].partial(i);
            for (int m = 0; m < d; ++m)
                sum += cj.gamma[k][i][m].value() * vj[m].value();
            nabla[k][i] = sum;
        }

    Eigen::MatrixXd out(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            // <mu(V) e_b, e_a> = -<nabla_{e_b} V, e_a>
            Complex sum = 0.0;
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l)
                        sum += frame[b][i].value() * nabla[k][i] * g[k][l].value() *
                               frame[a][l].value();
            out(a, b) = -sum.real();
        }
    return out;
}

bool jacobowitz_membership(const Scenario& s, const TwistPair& pair, const Pt& p, double tol) {
    const int d = s.dim();
    JetMat g = s.metric_jets(p, 0);
    JetVec x = pair.X.eval(p, 0);
    JetVec y = pair.Y.eval(p, 0);
    const double xy = metric_inner(g, x, y, d).value().real();
    const double xx = metric_inner(g, x, x, d).value().real();
    const double yy = metric_inner(g, y, y, d).value().real();
    return std::abs(xy) <= tol && std::abs(std::sqrt(xx) - std::sqrt(yy)) <= tol;
}

namespace {

struct Objective {
    // |X|^2 + |Y|^2 with gradient and Hessian from order-2 jets
    double f;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
};

Objective speed_objective(const Scenario& s, const TwistPair& pair, const Pt& p) {
    const int d = s.dim();
    JetMat g = s.metric_jets(p, 2);
    JetVec x = pair.X.eval(p, 2);
    JetVec y = pair.Y.eval(p, 2);
    Jet f = metric_inner(g, x, x, d) + metric_inner(g, y, y, d);

    Objective o;
    o.f = f.value().real();
    o.grad.resize(d);
    o.hess.resize(d, d);
    const JetTable& t = f.table();
    for (int i = 0; i < d; ++i) {
        o.grad(i) = f.partial(i).real();
        for (int j = 0; j < d; ++j) {
            std::array<std::uint8_t, 4> e{0, 0, 0, 0};
            e[i] += 1;
            e[j] += 1;
            const double scale = (i == j) ? 2.0 : 1.0;  // Taylor coeff -> derivative
            o.hess(i, j) = f[t.index_of(e)].real() * scale;
        }
    }
    return o;
}

double component_distance(const Chart& chart, const FixedComponent& c, const Pt& p) {
    double dmax = 0.0;
    for (const auto& fa : c.fixed_axes) {
        if (fa.degenerate) continue;
        dmax = std::max(dmax, chart.axis_distance(fa.axis, p[fa.axis], fa.value));
    }
    return dmax;
}

}  // namespace

std::vector<FixedComponent> find_zero_components(const Scenario& s, const TwistPair& pair) {
    const int d = s.dim();
    const Chart& chart = s.chart;

    const int per_axis = d <= 2 ? 32 : (d == 3 ? 16 : 10);
    std::vector<Pt> seeds;
    {
        std::vector<int> idx(d, 0);
        for (;;) {
            Pt p{};
            for (int i = 0; i < d; ++i)
                p[i] = chart.lo[i] + (idx[i] + 0.5) * chart.width(i) / per_axis;
            seeds.push_back(p);
            int axis = d - 1;
            while (axis >= 0 && ++idx[axis] == per_axis) idx[axis--] = 0;
            if (axis < 0) break;
        }
    }

    // damped Newton with box clamping; zeros may sit on the closed boundary
    std::vector<Pt> converged;
    const double ftol = 1e-14;
    for (Pt p : seeds) {
        double lambda = 1e-6;
        for (int it = 0; it < 60; ++it) {
            Objective o = speed_objective(s, pair, p);
            if (o.f < ftol) {
                converged.push_back(p);
                break;
            }
            if (o.grad.norm() < 1e-12) break;  // flat away from zero
            bool stepped = false;
            for (int tries = 0; tries < 12; ++tries) {
                Eigen::MatrixXd h = o.hess + lambda * Eigen::MatrixXd::Identity(d, d);
                Eigen::VectorXd step = h.ldlt().solve(-o.grad);
                Pt q = p;
                for (int i = 0; i < d; ++i) q[i] += step(i);
                q = chart.clamped(q);
                double fq = speed_objective(s, pair, q).f;
                if (fq < o.f) {
                    p = q;
                    lambda = std::max(lambda * 0.3, 1e-9);
                    stepped = true;
                    break;
                }
                lambda *= 10.0;
            }
            if (!stepped) break;
        }
    }

    // cross-validate against declarations
    const double match_radius = 1e-4;
    for (const Pt& p : converged) {
        bool matched = false;
        for (const auto& c : s.components)
            if (component_distance(chart, c, p) < match_radius) {
                matched = true;
                break;
            }
        if (!matched) {
            std::string where = "(";
            for (int i = 0; i < d; ++i)
                where += std::to_string(p[i]) + (i + 1 < d ? ", " : ")");
            raise(ErrorKind::Inconsistency,
                  "zero search found an undeclared zero of '" + s.name + "' near " + where);
        }
    }
    for (const auto& c : s.components) {
        bool found = false;
        for (const Pt& p : converged)
            if (component_distance(chart, c, p) < match_radius) {
                found = true;
                break;
            }
        if (!found)
            raise(ErrorKind::Inconsistency,
                  "declared component '" + c.id + "' of '" + s.name +
                      "' was not reached by the zero search");
    }
    return s.components;
}

void validate_component(const Scenario& s, const TwistPair& pair, const FixedComponent& comp) {
    const int d = s.dim();
    const int ncodim = static_cast<int>(comp.fixed_axes.size());
    if (ncodim % 2 != 0)
        raise(ErrorKind::Definition,
              "component '" + comp.id + "': normal dimension must be even");
    if (comp.mu_x.rows() != ncodim || comp.mu_x.cols() != ncodim ||
        comp.mu_y.rows() != ncodim || comp.mu_y.cols() != ncodim)
        raise(ErrorKind::Definition,
              "component '" + comp.id + "': moment matrices must match the normal dimension " +
                  std::to_string(ncodim));

    auto check_skew = [&](const Eigen::MatrixXd& m, const char* label) {
        if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
            raise(ErrorKind::Definition,
                  "component '" + comp.id + "': declared " + label + " is not skew-symmetric");
    };
    check_skew(comp.mu_x, "mu_x");
    check_skew(comp.mu_y, "mu_y");

    if (pair.commuting) {
        Eigen::MatrixXd comm = comp.mu_x * comp.mu_y - comp.mu_y * comp.mu_x;
        if (comm.cwiseAbs().maxCoeff() > 1e-9)
            raise(ErrorKind::Definition,
                  "component '" + comp.id + "': declared moment matrices do not commute");
    }

    // sample component points: the slice origin plus (for submanifolds) a
    // few interior points of the free box
    std::vector<Pt> cpts;
    auto free = comp.free_axes(s.chart);
    if (free.empty() || comp.kind == FixedComponent::Kind::IsolatedPoint) {
        cpts.push_back(Pt{});
    }
    if (!free.empty()) {
        Pt mid{};
        for (std::size_t b = 0; b < free.size(); ++b)
            mid[b] = s.chart.lo[free[b]] + 0.47 * s.chart.width(free[b]);
        cpts.push_back(mid);
    }

    const double mu_scale =
        std::max({1.0, comp.mu_x.cwiseAbs().maxCoeff(), comp.mu_y.cwiseAbs().maxCoeff()});
    for (const Pt& u : cpts) {
        Pt amb = comp.ambient_point(s.chart, u);
        JetMat g = s.metric_jets(amb, 0);
        JetVec x = pair.X.eval(amb, 0);
        JetVec y = pair.Y.eval(amb, 0);
        const double sx = std::sqrt(std::abs(metric_inner(g, x, x, d).value().real()));
        const double sy = std::sqrt(std::abs(metric_inner(g, y, y, d).value().real()));
        const double bound = std::max(1e-8, 1e3 * mu_scale * comp.approach);
        if (sx > bound || sy > bound)
            raise(ErrorKind::Definition,
                  "component '" + comp.id + "': fields do not vanish on it (|X| = " +
                      std::to_string(sx) + ", |Y| = " + std::to_string(sy) + ")");

        // frame-invariant agreement with the interior moment endomorphism:
        // Frobenius norms and |Pf| of the normal block, tangential block
        // annihilated (valid for the block-diagonal metrics the catalog uses)
        Eigen::MatrixXd mx = moment_endomorphism(s, pair.X, amb);
        Eigen::MatrixXd my = moment_endomorphism(s, pair.Y, amb);
        std::vector<int> nslots;
        for (const auto& fa : comp.fixed_axes) nslots.push_back(fa.axis);
        std::sort(nslots.begin(), nslots.end());
        auto block = [&](const Eigen::MatrixXd& m) {
            Eigen::MatrixXd b(ncodim, ncodim);
            for (int i = 0; i < ncodim; ++i)
                for (int j = 0; j < ncodim; ++j) b(i, j) = m(nslots[i], nslots[j]);
            return b;
        };
        const double slack = 1e-5 + 1e3 * comp.approach;
        auto check_block = [&](const Eigen::MatrixXd& full, const Eigen::MatrixXd& decl,
                               const char* label) {
            Eigen::MatrixXd b = block(full);
            if (std::abs(b.norm() - decl.norm()) > slack * mu_scale)
                raise(ErrorKind::Definition,
                      "component '" + comp.id + "': declared " + label +
                          " disagrees with the moment endomorphism near the component");
            Eigen::MatrixXcd bc = b.cast<Complex>(), dc = decl.cast<Complex>();
            // symmetrize away the numerical skew defect before taking Pf
            bc = 0.5 * (bc - bc.transpose());
            if (std::abs(std::abs(pfaffian(bc)) - std::abs(pfaffian(dc))) > slack * mu_scale)
                raise(ErrorKind::Definition,
                      "component '" + comp.id + "': |Pf| of declared " + label +
                          " disagrees with the moment endomorphism");
        };
        check_block(mx, comp.mu_x, "mu_x");
        check_block(my, comp.mu_y, "mu_y");

        if (comp.kind == FixedComponent::Kind::Submanifold) {
            double tang = 0.0;
            for (int i : free)
                for (int j : free)
                    tang = std::max(tang, std::max(std::abs(mx(i, j)), std::abs(my(i, j))));
            if (tang > slack * mu_scale)
                raise(ErrorKind::Definition,
                      "component '" + comp.id +
                          "': moment endomorphism does not annihilate the tangent directions");
        }
    }
}

NormalMoments normal_restriction(const FixedComponent& comp, const Scenario& s,
                                 const TwistPair& pair) {
    validate_component(s, pair, comp);
    return NormalMoments{comp.mu_x, comp.mu_y};
}

}  // namespace eqloc
