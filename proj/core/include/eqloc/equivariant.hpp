#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqloc/forms.hpp"

namespace eqloc {

/// d_{X+iY} = d + i_X + i*i_Y on complex-valued forms. Squares to
/// L_X + i*L_Y, which vanishes on invariant forms.
FormField twisted_differential(const TwistPair& pair, const FormField& f);

/// i_{X+iY} alone.
FormField twisted_contraction(const TwistPair& pair, const FormField& f);

/// Metric-dual 1-form V' = <V, .>_g.
FormField dual_one_form(const Scenario& s, const VectorField& v);

/// Selects which degree-1 generator the deformation exponentials use.
/// The last two require a commuting pair.
enum class GeneratorKind { XplusIY, YminusIX, XminusIY, YplusIX };

const char* to_string(GeneratorKind k);
bool generator_needs_commuting(GeneratorKind k);
/// Generators admissible for this pair, in enum order.
std::vector<GeneratorKind> admissible_generators(const TwistPair& pair);

struct GeneratorForms {
    FormField beta;   // the degree-1 generator
    FormField dbeta;  // its twisted differential (the closed form)
};

/// Builds beta for the requested kind and its twisted differential, and
/// verifies d_{X+iY}(dbeta) = 0 on a seeded sample. Raises Precondition if
/// the kind needs a commuting pair and the pair is not, Inconsistency if the
/// closedness residual exceeds tolerance.
GeneratorForms special_closed_form(const Scenario& s, const TwistPair& pair,
                                   GeneratorKind kind);

enum class LemmaCheck { L1, L2, L4, L5, Killing };

struct ResidualReport {
    std::string name;
    std::vector<std::pair<std::string, double>> parts;  // named sup-norms
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

/// Sup-norm residuals of the lemma identities over the deterministic sample
/// set. L1 takes the caller-supplied pair of equal-degree forms (xi, eta)
/// and reports the four split conditions separately.
ResidualReport lemma_residual(const Scenario& s, const TwistPair& pair, LemmaCheck which,
                              const FormField* xi = nullptr, const FormField* eta = nullptr,
                              std::uint64_t seed = 20240915);

/// Sup over samples of |L_V g| (componentwise), the Killing-equation
/// residual of a single field.
double killing_residual(const Scenario& s, const VectorField& v,
                        std::span<const Pt> samples);

/// Sup over samples of |[X, Y]| components.
double commutator_residual(const Scenario& s, const TwistPair& pair,
                           std::span<const Pt> samples);

}  // namespace eqloc
