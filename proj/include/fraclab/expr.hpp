#pragma once

// Small arithmetic expression evaluator for --init / --omega.
//   + - * / ^, unary minus, numbers, named variables, pi, e,
//   sin cos tan exp log sqrt abs tanh sinh cosh atan floor, pow min max atan2,
//   rand()  uniform on [-1, 1), drawn from the attached generator in call order.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace fraclab::expr {

class Expression {
public:
    Expression() = default;

    static Expression parse(const std::string& text, std::vector<std::string> variables) {
        Expression e;
        e.vars_ = std::move(variables);
        Parser p{text, e.vars_, 0};
        e.root_ = p.parse_expr();
        p.skip();
        if (p.pos != text.size()) p.fail("unexpected trailing input");
        return e;
    }

    void attach_rng(SplitMix64* rng) { rng_ = rng; }

    double operator()(std::span<const double> values) const {
        if (values.size() != vars_.size()) throw PreconditionError("expression: wrong number of variable values");
        return eval(*root_, values);
    }

    bool valid() const { return static_cast<bool>(root_); }

private:
    enum class Op { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2, Rand };

    struct Node {
        Op op = Op::Num;
        double value = 0.0;
        std::size_t var = 0;
        std::string fn;
        std::unique_ptr<Node> a;
        std::unique_ptr<Node> b;
    };
    using NodePtr = std::shared_ptr<Node>;

    struct Parser {
        const std::string& s;
        const std::vector<std::string>& vars;
        std::size_t pos;

        [[noreturn]] void fail(const std::string& msg) const {
            throw FormatError("expression: " + msg + " at position " + std::to_string(pos) + " in '" + s + "'");
        }
        void skip() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        static std::unique_ptr<Node> bin(Op op, std::unique_ptr<Node> a, std::unique_ptr<Node> b) {
            auto n = std::make_unique<Node>();
            n->op = op;
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }

        NodePtr parse_expr() { return NodePtr(expr().release()); }

        std::unique_ptr<Node> expr() {
            auto left = term();
            for (;;) {
                if (eat('+')) left = bin(Op::Add, std::move(left), term());
                else if (eat('-')) left = bin(Op::Sub, std::move(left), term());
                else return left;
            }
        }
        std::unique_ptr<Node> term() {
            auto left = unary();
            for (;;) {
                if (eat('*')) left = bin(Op::Mul, std::move(left), unary());
                else if (eat('/')) left = bin(Op::Div, std::move(left), unary());
                else return left;
            }
        }
        std::unique_ptr<Node> unary() {
            if (eat('-')) {
                auto n = std::make_unique<Node>();
                n->op = Op::Neg;
                n->a = unary();
                return n;
            }
            if (eat('+')) return unary();
            return power();
        }
        std::unique_ptr<Node> power() {
            auto base = primary();
            if (eat('^')) return bin(Op::Pow, std::move(base), unary());
            return base;
        }
        std::unique_ptr<Node> primary() {
            skip();
            if (pos >= s.size()) fail("unexpected end of input");
            if (eat('(')) {
                auto n = expr();
                if (!eat(')')) fail("expected ')'");
                return n;
            }
            const char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                const char* begin = s.c_str() + pos;
                char* end = nullptr;
                const double v = std::strtod(begin, &end);
                if (end == begin) fail("bad number");
                pos += static_cast<std::size_t>(end - begin);
                auto n = std::make_unique<Node>();
                n->value = v;
                return n;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                const std::size_t start = pos;
                while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
                const std::string name = s.substr(start, pos - start);
                if (eat('(')) return call(name);
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    if (vars[i] == name) {
                        auto n = std::make_unique<Node>();
                        n->op = Op::Var;
                        n->var = i;
                        return n;
                    }
                }
                auto n = std::make_unique<Node>();
                if (name == "pi") n->value = std::numbers::pi;
                else if (name == "e") n->value = std::numbers::e;
                else fail("unknown name '" + name + "'");
                return n;
            }
            fail(std::string("unexpected character '") + c + "'");
        }
        std::unique_ptr<Node> call(const std::string& name) {
            static const std::vector<std::string> unary_fns = {"sin", "cos", "tan", "exp", "log", "sqrt", "abs",
                                                               "tanh", "sinh", "cosh", "atan", "floor"};
            static const std::vector<std::string> binary_fns = {"pow", "min", "max", "atan2"};
            auto n = std::make_unique<Node>();
            n->fn = name;
            if (name == "rand") {
                if (!eat(')')) fail("rand() takes no arguments");
                n->op = Op::Rand;
                return n;
            }
            const bool is1 = std::find(unary_fns.begin(), unary_fns.end(), name) != unary_fns.end();
            const bool is2 = std::find(binary_fns.begin(), binary_fns.end(), name) != binary_fns.end();
            if (!is1 && !is2) fail("unknown function '" + name + "'");
            n->a = expr();
            if (is2) {
                if (!eat(',')) fail("expected ','");
                n->b = expr();
                n->op = Op::Call2;
            } else {
                n->op = Op::Call1;
            }
            if (!eat(')')) fail("expected ')'");
            return n;
        }
    };

    double eval(const Node& n, std::span<const double> v) const {
        switch (n.op) {
            case Op::Num: return n.value;
            case Op::Var: return v[n.var];
            case Op::Neg: return -eval(*n.a, v);
            case Op::Add: return eval(*n.a, v) + eval(*n.b, v);
            case Op::Sub: return eval(*n.a, v) - eval(*n.b, v);
            case Op::Mul: return eval(*n.a, v) * eval(*n.b, v);
            case Op::Div: return eval(*n.a, v) / eval(*n.b, v);
            case Op::Pow: return std::pow(eval(*n.a, v), eval(*n.b, v));
            case Op::Rand:
                if (!rng_) throw PreconditionError("expression: rand() needs a generator");
                return rng_->uniform(-1.0, 1.0);
            case Op::Call1: {
                const double x = eval(*n.a, v);
                const std::string& f = n.fn;
                if (f == "sin") return std::sin(x);
                if (f == "cos") return std::cos(x);
                if (f == "tan") return std::tan(x);
                if (f == "exp") return std::exp(x);
                if (f == "log") return std::log(x);
                if (f == "sqrt") return std::sqrt(x);
                if (f == "abs") return std::fabs(x);
                if (f == "tanh") return std::tanh(x);
                if (f == "sinh") return std::sinh(x);
                if (f == "cosh") return std::cosh(x);
                if (f == "atan") return std::atan(x);
                return std::floor(x);
            }
            case Op::Call2: {
                const double x = eval(*n.a, v);
                const double y = eval(*n.b, v);
                if (n.fn == "pow") return std::pow(x, y);
                if (n.fn == "min") return std::min(x, y);
                if (n.fn == "max") return std::max(x, y);
                return std::atan2(x, y);
            }
        }
        return 0.0;
    }

    std::vector<std::string> vars_;
    NodePtr root_;
    SplitMix64* rng_ = nullptr;
};

}  // namespace fraclab::expr
