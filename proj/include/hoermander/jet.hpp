#pragma once

// Truncated Taylor arithmetic. A Jet of order n carries the coefficients
// c_0..c_n of f(t0 + h) = sum c_i h^i, so f^{(i)}(t0) = i! c_i.

#include <array>
#include <cassert>
#include <cmath>
#include <complex>

namespace hoermander {

template <typename T>
class Jet {
 public:
  static constexpr int kMaxOrder = 15;

  Jet() : order_(0) { c_.fill(T(0)); }
  Jet(int order, T value) : order_(order) {
    assert(order >= 0 && order <= kMaxOrder);
    c_.fill(T(0));
    c_[0] = value;
  }

  /// The identity jet t -> t expanded at `at`.
  static Jet variable(int order, T at) {
    Jet j(order, at);
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return order_; }
  const T& operator[](int i) const { return c_[i]; }
  T& operator[](int i) { return c_[i]; }
  T value() const { return c_[0]; }

  /// i-th derivative at the expansion point.
  T derivative(int i) const {
    T f(1);
    for (int m = 2; m <= i; ++m) f *= T(m);
    return c_[i] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i <= order_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i <= order_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (int i = 0; i <= a.order_; ++i) a.c_[i] = -a.c_[i];
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order_, T(0));
    for (int n = 0; n <= a.order_; ++n) {
      T s(0);
      for (int i = 0; i <= n; ++i) s += a.c_[i] * b.c_[n - i];
      r.c_[n] = s;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(a.order_, T(0));
    for (int n = 0; n <= a.order_; ++n) {
      T s = a.c_[n];
      for (int i = 1; i <= n; ++i) s -= b.c_[i] * r.c_[n - i];
      r.c_[n] = s / b.c_[0];
    }
    return r;
  }
  friend Jet operator+(Jet a, const T& b) { a.c_[0] += b; return a; }
  friend Jet operator+(const T& b, Jet a) { a.c_[0] += b; return a; }
  friend Jet operator-(Jet a, const T& b) { a.c_[0] -= b; return a; }
  friend Jet operator-(const T& b, const Jet& a) { return Jet(a.order_, b) - a; }
  friend Jet operator*(Jet a, const T& b) {
    for (int i = 0; i <= a.order_; ++i) a.c_[i] *= b;
    return a;
  }
  friend Jet operator*(const T& b, Jet a) { return a * b; }
  friend Jet operator/(Jet a, const T& b) {
    for (int i = 0; i <= a.order_; ++i) a.c_[i] /= b;
    return a;
  }
  friend Jet operator/(const T& b, const Jet& a) { return Jet(a.order_, b) / a; }

  friend Jet exp(const Jet& a) {
    using std::exp;
    Jet r(a.order_, exp(a.c_[0]));
    for (int n = 1; n <= a.order_; ++n) {
      T s(0);
      for (int i = 1; i <= n; ++i) s += T(i) * a.c_[i] * r.c_[n - i];
      r.c_[n] = s / T(n);
    }
    return r;
  }
  friend Jet log(const Jet& a) {
    using std::log;
    Jet r(a.order_, log(a.c_[0]));
    for (int n = 1; n <= a.order_; ++n) {
      T s(0);
      for (int i = 1; i < n; ++i) s += T(i) * r.c_[i] * a.c_[n - i];
      r.c_[n] = (a.c_[n] - s / T(n)) / a.c_[0];
    }
    return r;
  }
  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }
  /// a^p for a real exponent p; requires a.value() != 0.
  friend Jet pow(const Jet& a, double p) {
    using std::pow;
    Jet r(a.order_, pow(a.c_[0], T(p)));
    for (int n = 1; n <= a.order_; ++n) {
      T s(0);
      for (int i = 1; i <= n; ++i) s += (T(p * i) - T(n - i)) * a.c_[i] * r.c_[n - i];
      r.c_[n] = s / (T(n) * a.c_[0]);
    }
    return r;
  }

 private:
  static void sincos(const Jet& a, Jet& s, Jet& c) {
    using std::cos;
    using std::sin;
    s = Jet(a.order_, sin(a.c_[0]));
    c = Jet(a.order_, cos(a.c_[0]));
    for (int n = 1; n <= a.order_; ++n) {
      T ss(0), cc(0);
      for (int i = 1; i <= n; ++i) {
        ss += T(i) * a.c_[i] * c.c_[n - i];
        cc += T(i) * a.c_[i] * s.c_[n - i];
      }
      s.c_[n] = ss / T(n);
      c.c_[n] = -cc / T(n);
    }
  }

  int order_;
  std::array<T, kMaxOrder + 1> c_;
};

}  // namespace hoermander
