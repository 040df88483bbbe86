#pragma once

#include "inscribe/core.hpp"

#include <cctype>
#include <memory>
#include <string>

namespace inscribe {

/// Tiny expression grammar over two variables (phi, theta):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' unary)*        (right associative)
///   unary  := '-' unary | primary
///   primary:= number | 'phi' | 'theta' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func   := 'sin' | 'cos' | 'abs'
/// Covers r(phi,theta) = 1 + sin(phi)^3*sin(3*theta)/5 - abs(cos(phi)^7).
class Expression {
  public:
    static Expression parse(const std::string& text) {
        Parser p{text, 0};
        Expression e;
        e.root_ = p.parse_expr();
        p.skip_ws();
        if (p.pos != text.size()) throw parse_error("trailing characters in expression");
        return e;
    }

    double operator()(double phi, double theta) const { return root_->eval(phi, theta); }

  private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(double phi, double theta) const = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    struct Const : Node {
        double v;
        explicit Const(double x) : v(x) {}
        double eval(double, double) const override { return v; }
    };
    struct Var : Node {
        bool phi;
        explicit Var(bool p) : phi(p) {}
        double eval(double ph, double th) const override { return phi ? ph : th; }
    };
    struct Unary : Node {
        int op;  // 0 neg, 1 sin, 2 cos, 3 abs
        NodePtr a;
        Unary(int o, NodePtr x) : op(o), a(std::move(x)) {}
        double eval(double ph, double th) const override {
            const double x = a->eval(ph, th);
            switch (op) {
                case 0: return -x;
                case 1: return std::sin(x);
                case 2: return std::cos(x);
                default: return std::abs(x);
            }
        }
    };
    struct Binary : Node {
        char op;
        NodePtr a, b;
        Binary(char o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
        double eval(double ph, double th) const override {
            const double x = a->eval(ph, th), y = b->eval(ph, th);
            switch (op) {
                case '+': return x + y;
                case '-': return x - y;
                case '*': return x * y;
                case '/': return x / y;
                default: return std::pow(x, y);
            }
        }
    };

    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool consume(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        NodePtr parse_expr() {
            NodePtr a = parse_term();
            while (true) {
                if (consume('+'))
                    a = std::make_shared<Binary>('+', a, parse_term());
                else if (consume('-'))
                    a = std::make_shared<Binary>('-', a, parse_term());
                else
                    return a;
            }
        }
        NodePtr parse_term() {
            NodePtr a = parse_factor();
            while (true) {
                if (consume('*'))
                    a = std::make_shared<Binary>('*', a, parse_factor());
                else if (consume('/'))
                    a = std::make_shared<Binary>('/', a, parse_factor());
                else
                    return a;
            }
        }
        NodePtr parse_factor() {
            NodePtr a = parse_unary();
            if (consume('^')) return std::make_shared<Binary>('^', a, parse_factor());
            return a;
        }
        NodePtr parse_unary() {
            if (consume('-')) return std::make_shared<Unary>(0, parse_unary());
            return parse_primary();
        }
        NodePtr parse_primary() {
            skip_ws();
            if (pos >= s.size()) throw parse_error("unexpected end of expression");
            const char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t used = 0;
                const double v = std::stod(s.substr(pos), &used);
                pos += used;
                return std::make_shared<Const>(v);
            }
            if (c == '(') {
                ++pos;
                NodePtr e = parse_expr();
                if (!consume(')')) throw parse_error("missing ')' in expression");
                return e;
            }
            std::string name;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
                name += s[pos++];
            if (name == "phi") return std::make_shared<Var>(true);
            if (name == "theta") return std::make_shared<Var>(false);
            if (name == "pi") return std::make_shared<Const>(kPi);
            int fn = -1;
            if (name == "sin") fn = 1;
            else if (name == "cos") fn = 2;
            else if (name == "abs") fn = 3;
            if (fn < 0) throw parse_error("unknown identifier in expression: '" + name + "'");
            if (!consume('(')) throw parse_error("expected '(' after " + name);
            NodePtr arg = parse_expr();
            if (!consume(')')) throw parse_error("missing ')' after " + name + " argument");
            return std::make_shared<Unary>(fn, arg);
        }
    };

    NodePtr root_;
};

}  // namespace inscribe
