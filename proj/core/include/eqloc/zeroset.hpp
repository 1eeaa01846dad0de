#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "eqloc/error.hpp"
#include "eqloc/forms.hpp"
#include "eqloc/geometry.hpp"

namespace eqloc {

/// Complex skew matrix stored by its strict upper triangle; A + A^T = 0
/// holds exactly by construction.
class SkewComplexMatrix {
public:
    explicit SkewComplexMatrix(int n);
    /// Row-major strict upper triangle, length n(n-1)/2.
    static SkewComplexMatrix from_upper(int n, std::span<const Complex> upper);
    /// Validates skewness of the dense input (tolerance 1e-13 relative).
    static SkewComplexMatrix from_dense(const Eigen::MatrixXcd& a);

    int size() const { return n_; }
    Complex operator()(int i, int j) const;
    void set(int i, int j, Complex v);  // i < j
    Eigen::MatrixXcd dense() const;

private:
    int n_ = 0;
    std::vector<Complex> upper_;
};

/// Pfaffian by recursive first-row expansion. Requires even size; the empty
/// 0x0 matrix has Pfaffian 1. A polynomial in the entries: no branch cuts.
Complex pfaffian(const SkewComplexMatrix& a);
Complex pfaffian(const Eigen::MatrixXcd& a);

/// Same expansion over any commutative ring with +, unary -, * and +=.
/// `entry(i, j)` must be the (i, j) slot of a skew matrix; only i < j slots
/// are read. Used with even-degree form values, whose wedge product commutes.
template <class Ring, class EntryFn>
Ring pfaffian_ring(int n, const EntryFn& entry, const Ring& one) {
    if (n % 2 != 0) raise(ErrorKind::Argument, "pfaffian: odd size");
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;

    struct Rec {
        const EntryFn& at;
        Ring run(const std::vector<int>& ids, const Ring& one) const {
            const std::size_t m = ids.size();
            if (m == 0) return one;
            if (m == 2) return at(ids[0], ids[1]);
            std::optional<Ring> acc;
            for (std::size_t j = 1; j < m; ++j) {
                std::vector<int> rest;
                rest.reserve(m - 2);
                for (std::size_t k = 1; k < m; ++k)
                    if (k != j) rest.push_back(ids[k]);
                Ring term = at(ids[0], ids[j]) * run(rest, one);
                if (j % 2 == 0) term = -term;
                if (acc)
                    *acc += term;
                else
                    acc.emplace(std::move(term));
            }
            return *acc;
        }
    };
    return Rec{entry}.run(idx, one);
}

/// Matrix of v -> -nabla_v V in the positively-oriented orthonormal chart
/// frame; skew for Killing V.
Eigen::MatrixXd moment_endomorphism(const Scenario& s, const VectorField& v, const Pt& p);

/// Membership in the larger zero-set notion { <X,Y> = 0, |X| = |Y| }.
bool jacobowitz_membership(const Scenario& s, const TwistPair& pair, const Pt& p, double tol);

/// Zero set of X - iY, i.e. { |X| = |Y| = 0 }: seeds a grid, runs damped
/// Newton on |X|^2 + |Y|^2, and cross-validates the converged minima against
/// the scenario-declared components, which are returned. Disagreement in
/// either direction raises Inconsistency.
std::vector<FixedComponent> find_zero_components(const Scenario& s, const TwistPair& pair);

struct NormalMoments {
    Eigen::MatrixXd mu_x;
    Eigen::MatrixXd mu_y;
};

/// Declared normal-frame moment matrices after consistency validation:
/// skewness, commutation for commuting pairs, frame-invariant agreement with
/// the interior moment endomorphism near the component, vanishing of both
/// fields on it, and annihilation of the tangential block.
NormalMoments normal_restriction(const FixedComponent& comp, const Scenario& s,
                                 const TwistPair& pair);

/// Validation used by normal_restriction and scenario construction.
void validate_component(const Scenario& s, const TwistPair& pair, const FixedComponent& comp);

}  // namespace eqloc
