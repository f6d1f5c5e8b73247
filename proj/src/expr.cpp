#include "hoermander/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace hoermander {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Expr::Op op, NodePtr a = nullptr, NodePtr b = nullptr, Complex value = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = value;
  return n;
}

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' signed-number)?
// atom   := number | name | name '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (accept('+')) {
        left = make(Expr::Op::Add, left, term());
      } else if (accept('-')) {
        left = make(Expr::Op::Sub, left, term());
      } else {
        return left;
      }
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (accept('*')) {
        left = make(Expr::Op::Mul, left, unary());
      } else if (accept('/')) {
        left = make(Expr::Op::Div, left, unary());
      } else {
        return left;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Expr::Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) {
      double sign = 1.0;
      if (accept('-')) sign = -1.0;
      skip();
      if (pos_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
        fail("exponent must be a numeric literal");
      }
      return make(Expr::Op::Pow, base, nullptr, sign * number());
    }
    return base;
  }

  double number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return make(Expr::Op::Const, nullptr, nullptr, number());
    }
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) name += s_[pos_++];
      if (name == "x") return make(Expr::Op::X);
      if (name == "y") return make(Expr::Op::Y);
      if (name == "t") return make(Expr::Op::T);
      if (name == "pi") return make(Expr::Op::Const, nullptr, nullptr, std::numbers::pi);
      if (name == "e") return make(Expr::Op::Const, nullptr, nullptr, std::numbers::e);
      if (name == "I") return make(Expr::Op::Const, nullptr, nullptr, Complex(0.0, 1.0));
      Expr::Op op;
      if (name == "sin") {
        op = Expr::Op::Sin;
      } else if (name == "cos") {
        op = Expr::Op::Cos;
      } else if (name == "exp") {
        op = Expr::Op::Exp;
      } else if (name == "log") {
        op = Expr::Op::Log;
      } else {
        fail("unknown name '" + name + "'");
      }
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make(op, arg);
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

bool depends_on_variables(const Expr::Node& n) {
  switch (n.op) {
    case Expr::Op::X:
    case Expr::Op::Y:
    case Expr::Op::T: return true;
    case Expr::Op::Const: return false;
    default: return (n.a && depends_on_variables(*n.a)) || (n.b && depends_on_variables(*n.b));
  }
}

}  // namespace

Expr::Expr() : root_(make(Op::Const)), text_("0") {}

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).parse();
  e.text_ = text;
  return e;
}

Expr Expr::constant(Complex value) {
  Expr e;
  e.root_ = make(Op::Const, nullptr, nullptr, value);
  e.text_ = value.imag() == 0.0 ? std::to_string(value.real())
                                : "(" + std::to_string(value.real()) + "+" + std::to_string(value.imag()) + "*I)";
  return e;
}

bool Expr::is_constant() const { return !depends_on_variables(*root_); }

bool Expr::is_zero() const { return is_constant() && (*this)(0.0, 0.0, 0.0) == Complex(0.0); }

std::vector<Complex> Expr::time_derivatives(double x, double y, double t, int order) const {
  if (order < 0 || order > ComplexJet::kMaxOrder) throw InvalidArgument("time derivative order out of range");
  const ComplexJet jx(order, Complex(x));
  const ComplexJet jy(order, Complex(y));
  const ComplexJet jt = ComplexJet::variable(order, Complex(t));
  const ComplexJet r = eval<ComplexJet>(jx, jy, jt);
  std::vector<Complex> out(order + 1);
  for (int i = 0; i <= order; ++i) out[i] = r.derivative(i);
  return out;
}

}  // namespace hoermander
