#include "qwalls/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qwalls {

struct Expr::Node {
    enum class Kind { constant, variable, unary, binary, call } kind;
    double value = 0.0;
    char op = 0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "expression error at position " << pos << ": " << what << " in '" << s << "'";
        throw std::invalid_argument(os.str());
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(unsigned(s[pos]))) ++pos;
    }

    bool consume(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr make_const(double v) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::constant;
        n->value = v;
        return n;
    }

    NodePtr parse_expression() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_ws();
            if (consume('+')) lhs = binary('+', lhs, parse_term());
            else if (consume('-')) lhs = binary('-', lhs, parse_term());
            else return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            skip_ws();
            if (consume('*')) lhs = binary('*', lhs, parse_unary());
            else if (consume('/')) lhs = binary('/', lhs, parse_unary());
            else return lhs;
        }
    }

    // exponentiation binds tighter than unary minus: -t^2 == -(t^2)
    NodePtr parse_unary() {
        skip_ws();
        if (consume('-')) {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::unary;
            n->lhs = parse_unary();
            return n;
        }
        (void)consume('+');
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        skip_ws();
        // right associative; the exponent may carry its own sign: 2^-3
        if (consume('^')) return binary('^', base, parse_unary());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        const char c = s[pos];
        if (std::isdigit(unsigned(c)) || c == '.') {
            size_t used = 0;
            double v;
            try {
                v = std::stod(s.substr(pos), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos += used;
            return make_const(v);
        }
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expression();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(unsigned(c)) || c == '_') {
            size_t end = pos;
            while (end < s.size() && (std::isalnum(unsigned(s[end])) || s[end] == '_')) ++end;
            const std::string name = s.substr(pos, end - pos);
            pos = end;
            if (name == "t") {
                auto n = std::make_shared<Expr::Node>();
                n->kind = Expr::Node::Kind::variable;
                return n;
            }
            if (name == "pi") return make_const(std::numbers::pi);
            if (name == "e") return make_const(std::numbers::e);
            static const std::pair<const char*, double (*)(double)> fns[] = {
                {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
                {"exp", std::exp},   {"log", std::log},   {"sqrt", std::sqrt},
                {"sinh", std::sinh}, {"cosh", std::cosh}, {"tanh", std::tanh},
                {"abs", std::fabs},
            };
            for (const auto& [fname, fptr] : fns) {
                if (name == fname) {
                    if (!consume('(')) fail("expected '(' after function name");
                    NodePtr arg = parse_expression();
                    if (!consume(')')) fail("expected ')'");
                    auto n = std::make_shared<Expr::Node>();
                    n->kind = Expr::Node::Kind::call;
                    n->fn = fptr;
                    n->lhs = arg;
                    return n;
                }
            }
            fail("unknown identifier '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr binary(char op, NodePtr l, NodePtr r) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::binary;
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }
};

double eval_node(const Expr::Node& n, double t) {
    using Kind = Expr::Node::Kind;
    switch (n.kind) {
        case Kind::constant: return n.value;
        case Kind::variable: return t;
        case Kind::unary: return -eval_node(*n.lhs, t);
        case Kind::call: return n.fn(eval_node(*n.lhs, t));
        case Kind::binary: {
            const double a = eval_node(*n.lhs, t);
            const double b = eval_node(*n.rhs, t);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
        }
    }
    return 0.0;
}

}  // namespace

Expr::Expr() = default;
Expr::Expr(Expr&&) noexcept = default;
Expr& Expr::operator=(Expr&&) noexcept = default;
Expr::Expr(const Expr&) = default;
Expr& Expr::operator=(const Expr&) = default;
Expr::~Expr() = default;

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    Expr e;
    e.text_ = text;
    e.root_ = p.parse_expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

double Expr::eval(double t) const {
    if (!root_) throw std::logic_error("Expr: evaluating an empty expression");
    return eval_node(*root_, t);
}

}  // namespace qwalls
