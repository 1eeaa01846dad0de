#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eqloc/jet.hpp"

namespace eqloc {

/// Closed-form coefficient functions for scenario data. The grammar is
/// deliberately tiny: +, -, *, /, sin, cos, exp, numeric literals, pi,
/// chart coordinates and named parameters. Everything it can express is
/// smooth on the chart interior and evaluates exactly on jets of any order.
class Expression {
public:
    Expression() = default;

    /// Parse against the given coordinate names; any other identifier is a
    /// named parameter to be bound later. Throws std::invalid_argument with
    /// a position-annotated message on malformed input.
    static Expression parse(const std::string& text,
                            const std::vector<std::string>& coords);

    /// Fold parameter values into constants. Throws if a parameter named in
    /// the expression is missing from the map.
    void bind(const std::map<std::string, double>& params);

    bool empty() const { return code_.empty(); }
    const std::string& text() const { return text_; }
    std::vector<std::string> parameter_names() const;

    /// Evaluate on jet-valued coordinates (coords.size() >= chart dim).
    Jet operator()(std::span<const Jet> coords) const;
    double value_at(const Pt& p, int dim) const;

private:
    enum class Op : std::uint8_t {
        Const, Coord, Param, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp
    };
    struct Instr {
        Op op;
        int arg = 0;       // coordinate / parameter index
        double cval = 0.0; // constant payload
    };

    std::string text_;
    std::vector<Instr> code_;   // postfix program
    std::vector<std::string> params_;
};

}  // namespace eqloc
