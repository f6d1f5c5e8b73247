#pragma once

// Coefficient expressions over (x, y, t): + - * / ^, sin cos exp log,
// constants pi, e, I. Exponents must be numeric literals.

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "hoermander/errors.hpp"
#include "hoermander/jet.hpp"

namespace hoermander {

using Complex = std::complex<double>;
using ComplexJet = Jet<Complex>;

class Expr {
 public:
  enum class Op { Const, X, Y, T, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Log };

  struct Node {
    Op op = Op::Const;
    Complex value = 0.0;  // Const value, or the exponent for Pow
    std::shared_ptr<const Node> a, b;
  };

  Expr();  // the constant 0
  static Expr parse(const std::string& text);
  static Expr constant(Complex value);

  const std::string& text() const { return text_; }
  bool is_constant() const;
  bool is_zero() const;

  Complex operator()(double x, double y, double t) const {
    return eval<Complex>(Complex(x), Complex(y), Complex(t));
  }

  /// d^i/dt^i at (x, y, t) for i = 0..order.
  std::vector<Complex> time_derivatives(double x, double y, double t, int order) const;

  template <typename T>
  T eval(const T& x, const T& y, const T& t) const {
    return eval_node<T>(*root_, x, y, t);
  }

 private:
  static Complex lift(const Complex&, Complex c) { return c; }
  static ComplexJet lift(const ComplexJet& like, Complex c) { return ComplexJet(like.order(), c); }

  template <typename T>
  static T eval_node(const Node& n, const T& x, const T& y, const T& t) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    switch (n.op) {
      case Op::Const: return lift(x, n.value);
      case Op::X: return x;
      case Op::Y: return y;
      case Op::T: return t;
      case Op::Add: return eval_node<T>(*n.a, x, y, t) + eval_node<T>(*n.b, x, y, t);
      case Op::Sub: return eval_node<T>(*n.a, x, y, t) - eval_node<T>(*n.b, x, y, t);
      case Op::Mul: return eval_node<T>(*n.a, x, y, t) * eval_node<T>(*n.b, x, y, t);
      case Op::Div: return eval_node<T>(*n.a, x, y, t) / eval_node<T>(*n.b, x, y, t);
      case Op::Neg: return -eval_node<T>(*n.a, x, y, t);
      case Op::Pow: return power(eval_node<T>(*n.a, x, y, t), n.value.real());
      case Op::Sin: return sin(eval_node<T>(*n.a, x, y, t));
      case Op::Cos: return cos(eval_node<T>(*n.a, x, y, t));
      case Op::Exp: return exp(eval_node<T>(*n.a, x, y, t));
      case Op::Log: return log(eval_node<T>(*n.a, x, y, t));
    }
    return lift(x, 0.0);
  }

  // Integer exponents use repeated products so that zero bases stay exact.
  template <typename T>
  static T power(const T& base, double p) {
    const double r = std::round(p);
    if (r == p && std::abs(r) <= 32) {
      T out = lift(base, 1.0);
      for (int i = 0; i < std::abs(static_cast<int>(r)); ++i) out = out * base;
      return r < 0 ? lift(base, 1.0) / out : out;
    }
    using std::pow;
    return pow(base, p);
  }

  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace hoermander
