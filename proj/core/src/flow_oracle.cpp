#include "eqloc/flow_oracle.hpp"

#include <bit>
#include <cmath>

namespace eqloc {

namespace {

struct FlowState {
    Pt x{};
    std::array<std::array<double, 4>, 4> jac{};  // jac[a][i] = d phi^a / d x^i
};

FlowState derivative(const VectorField& v, const FlowState& st, int d) {
    JetVec vj = v.eval(st.x, 1);
    FlowState out;
    for (int a = 0; a < d; ++a) out.x[a] = vj[a].value().real();
    // variational equation: J' = (DV) J
    for (int a = 0; a < d; ++a)
        for (int i = 0; i < d; ++i) {
            double sum = 0.0;
            for (int m = 0; m < d; ++m)
                sum += vj[a].partial(m).real() * st.jac[m][i];
            out.jac[a][i] = sum;
        }
    return out;
}

FlowState axpy(const FlowState& a, double c, const FlowState& b, int d) {
    FlowState out = a;
    for (int i = 0; i < d; ++i) {
        out.x[i] += c * b.x[i];
        for (int j = 0; j < d; ++j) out.jac[i][j] += c * b.jac[i][j];
    }
    return out;
}

// determinant of the minor with rows from `rows` mask, cols from `cols` mask
double minor_det(const std::array<std::array<double, 4>, 4>& m, unsigned rows, unsigned cols) {
    std::array<int, 4> r{}, c{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (rows & (1u << i)) r[k++] = i;
    int kc = 0;
    for (int i = 0; i < 4; ++i)
        if (cols & (1u << i)) c[kc++] = i;

    switch (k) {
        case 0: return 1.0;
        case 1: return m[r[0]][c[0]];
        case 2:
            return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
        case 3: {
            double det = 0.0;
            for (int j = 0; j < 3; ++j) {
                double sub = m[r[1]][c[(j + 1) % 3]] * m[r[2]][c[(j + 2) % 3]] -
                             m[r[1]][c[(j + 2) % 3]] * m[r[2]][c[(j + 1) % 3]];
                det += m[r[0]][c[j]] * sub;
            }
            return det;
        }
        default: {
            // Laplace along the first row
            double det = 0.0;
            double sign = 1.0;
            for (int j = 0; j < 4; ++j) {
                unsigned sub_cols = cols & ~(1u << c[j]);
                det += sign * m[r[0]][c[j]] * minor_det(m, rows & ~(1u << r[0]), sub_cols);
                sign = -sign;
            }
            return det;
        }
    }
}

}  // namespace

FormValue flow_pullback(const VectorField& v, const FormField& f, const Pt& p, double t,
                        int steps) {
    const int d = v.dim;
    FlowState st;
    st.x = p;
    for (int i = 0; i < d; ++i) st.jac[i][i] = 1.0;

    const double h = t / steps;
    for (int s = 0; s < steps; ++s) {
        FlowState k1 = derivative(v, st, d);
        FlowState k2 = derivative(v, axpy(st, 0.5 * h, k1, d), d);
        FlowState k3 = derivative(v, axpy(st, 0.5 * h, k2, d), d);
        FlowState k4 = derivative(v, axpy(st, h, k3, d), d);
        for (int i = 0; i < d; ++i) {
            st.x[i] += h / 6.0 * (k1.x[i] + 2 * k2.x[i] + 2 * k3.x[i] + k4.x[i]);
            for (int j = 0; j < d; ++j)
                st.jac[i][j] +=
                    h / 6.0 * (k1.jac[i][j] + 2 * k2.jac[i][j] + 2 * k3.jac[i][j] + k4.jac[i][j]);
        }
    }

    FormValue w = f(st.x, 0);
    FormValue out(d, 0);
    for (unsigned target = 0; target < out.nmasks(); ++target) {
        const int k = std::popcount(target);
        Jet acc = Jet::constant(d, 0, 0.0);
        for (unsigned src = 0; src < w.nmasks(); ++src) {
            if (std::popcount(src) != k) continue;
            const double det = minor_det(st.jac, src, target);
            if (det != 0.0) acc += w.coef(src) * Complex(det);
        }
        out.coef(target) = acc;
    }
    return out;
}

FormValue flow_lie_derivative(const VectorField& v, const FormField& f, const Pt& p,
                              double h) {
    FormValue p1 = flow_pullback(v, f, p, h);
    FormValue m1 = flow_pullback(v, f, p, -h);
    FormValue p2 = flow_pullback(v, f, p, 2 * h);
    FormValue m2 = flow_pullback(v, f, p, -2 * h);
    FormValue num = (p1 - m1) * Complex(8.0) - (p2 - m2);
    return num * Complex(1.0 / (12.0 * h));
}

}  // namespace eqloc
