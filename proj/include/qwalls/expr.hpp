// Tiny arithmetic expression parser for trajectory specifications like
// "1 + 0.1*sin(t)". Grammar: + - * / ^ with usual precedence, parentheses,
// unary minus, the variable t, the constant pi, and one-argument functions
// sin cos tan exp log sqrt sinh cosh tanh abs.
#pragma once

#include <memory>
#include <string>

namespace qwalls {

class Expr {
  public:
    // throws std::invalid_argument with position info on malformed input
    static Expr parse(const std::string& text);

    double eval(double t) const;
    const std::string& text() const { return text_; }

    Expr(Expr&&) noexcept;
    Expr& operator=(Expr&&) noexcept;
    Expr(const Expr&);
    Expr& operator=(const Expr&);
    ~Expr();

    struct Node;  // exposed for the implementation; not part of the API

  private:
    Expr();
    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace qwalls
