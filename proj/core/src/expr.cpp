#include "eqloc/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace eqloc {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    const std::vector<std::string>& coords;
    std::vector<Expression>* dummy = nullptr;

    explicit Parser(const std::string& text, const std::vector<std::string>& c)
        : s(text), coords(c) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression parse error at position " +
                                    std::to_string(pos) + ": " + what +
                                    " in \"" + s + "\"");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
};

}  // namespace

// Recursive-descent parser emitting a postfix program.
Expression Expression::parse(const std::string& text,
                             const std::vector<std::string>& coords) {
    Expression e;
    e.text_ = text;
    Parser p(text, coords);

    std::vector<std::string>& params = e.params_;
    std::vector<Instr>& code = e.code_;

    auto coord_index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == name) return static_cast<int>(i);
        return -1;
    };
    auto param_index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < params.size(); ++i)
            if (params[i] == name) return static_cast<int>(i);
        params.push_back(name);
        return static_cast<int>(params.size()) - 1;
    };

    std::function<void()> expr_rule;

    auto atom_rule = [&]() {
        char c = p.peek();
        if (c == '(') {
            p.eat('(');
            expr_rule();
            if (!p.eat(')')) p.fail("expected ')'");
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(p.s.substr(p.pos), &used);
            } catch (const std::exception&) {
                p.fail("bad numeric literal");
            }
            p.pos += used;
            code.push_back({Op::Const, 0, v});
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = p.pos;
            while (p.pos < p.s.size() &&
                   (std::isalnum(static_cast<unsigned char>(p.s[p.pos])) || p.s[p.pos] == '_'))
                ++p.pos;
            std::string name = p.s.substr(start, p.pos - start);
            if (name == "sin" || name == "cos" || name == "exp") {
                if (!p.eat('(')) p.fail("expected '(' after " + name);
                expr_rule();
                if (!p.eat(')')) p.fail("expected ')'");
                code.push_back({name == "sin" ? Op::Sin : name == "cos" ? Op::Cos : Op::Exp, 0, 0.0});
                return;
            }
            if (name == "pi") {
                code.push_back({Op::Const, 0, M_PI});
                return;
            }
            int ci = coord_index(name);
            if (ci >= 0) {
                code.push_back({Op::Coord, ci, 0.0});
                return;
            }
            code.push_back({Op::Param, param_index(name), 0.0});
            return;
        }
        p.fail("unexpected character");
    };

    std::function<void()> factor_rule = [&]() {
        if (p.eat('-')) {
            factor_rule();
            code.push_back({Op::Neg, 0, 0.0});
            return;
        }
        if (p.eat('+')) { factor_rule(); return; }
        atom_rule();
    };

    auto term_rule = [&]() {
        factor_rule();
        for (;;) {
            if (p.eat('*')) {
                factor_rule();
                code.push_back({Op::Mul, 0, 0.0});
            } else if (p.eat('/')) {
                factor_rule();
                code.push_back({Op::Div, 0, 0.0});
            } else {
                break;
            }
        }
    };

    expr_rule = [&]() {
        term_rule();
        for (;;) {
            if (p.eat('+')) {
                term_rule();
                code.push_back({Op::Add, 0, 0.0});
            } else if (p.eat('-')) {
                term_rule();
                code.push_back({Op::Sub, 0, 0.0});
            } else {
                break;
            }
        }
    };

    expr_rule();
    p.skip_ws();
    if (p.pos != p.s.size()) p.fail("trailing input");
    return e;
}

void Expression::bind(const std::map<std::string, double>& params) {
    for (auto& ins : code_) {
        if (ins.op != Op::Param) continue;
        auto it = params.find(params_[ins.arg]);
        if (it == params.end())
            throw std::invalid_argument("unbound parameter '" + params_[ins.arg] +
                                        "' in \"" + text_ + "\"");
        ins.op = Op::Const;
        ins.cval = it->second;
    }
    params_.clear();
}

std::vector<std::string> Expression::parameter_names() const {
    return params_;
}

Jet Expression::operator()(std::span<const Jet> coords) const {
    if (code_.empty()) throw std::logic_error("evaluating empty expression");
    const JetTable& t = coords[0].table();
    boost::container::small_vector<Jet, 8> stack;
    for (const auto& ins : code_) {
        switch (ins.op) {
            case Op::Const:
                stack.push_back(Jet::constant(t.dim, t.order, ins.cval));
                break;
            case Op::Coord:
                stack.push_back(coords[ins.arg]);
                break;
            case Op::Param:
                throw std::logic_error("unbound parameter at evaluation in \"" + text_ + "\"");
            case Op::Neg:
                stack.back() = -stack.back();
                break;
            case Op::Sin:
                stack.back() = sin(stack.back());
                break;
            case Op::Cos:
                stack.back() = cos(stack.back());
                break;
            case Op::Exp:
                stack.back() = exp(stack.back());
                break;
            default: {
                Jet b = std::move(stack.back());
                stack.pop_back();
                Jet& a = stack.back();
                if (ins.op == Op::Add) a += b;
                else if (ins.op == Op::Sub) a -= b;
                else if (ins.op == Op::Mul) a = a * b;
                else a = a / b;
                break;
            }
        }
    }
    return std::move(stack.back());
}

double Expression::value_at(const Pt& p, int dim) const {
    auto coords = seed_point(p, dim, 0);
    return (*this)(std::span<const Jet>(coords.data(), dim)).value().real();
}

}  // namespace eqloc
