#pragma once

// Function parameters: slowly varying weights phi (class M) and
// interpolation parameters psi (class B).

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace hoermander {

enum class ParamKind { LogPower, Constant, PowerTimesSlow, Custom };

/// A positive function of r >= 1. Closed-form kinds are iterated-log powers
/// (1 + ln r)^{theta_1} (1 + ln(1 + ln r))^{theta_2} ..., optionally times r^b.
/// Closed forms are evaluated at max(r, 1).
class FunctionParam {
 public:
  FunctionParam();  // phi == 1

  static FunctionParam log_power(std::vector<double> theta);
  static FunctionParam constant(double value);
  static FunctionParam power_times_slow(double base_power, std::vector<double> theta);
  static FunctionParam custom(std::function<double(double)> evaluator, std::string label);

  double operator()(double r) const;

  ParamKind kind() const { return kind_; }
  const std::vector<double>& exponents() const { return theta_; }
  double base_power() const { return base_power_; }
  double constant_value() const { return value_; }
  std::string label() const;

  /// Throws NonPositiveValue unless phi > 0 on r in {1, 10, ..., 1e8}.
  void validate() const;

 private:
  ParamKind kind_ = ParamKind::Constant;
  std::vector<double> theta_;
  double base_power_ = 0.0;
  double value_ = 1.0;
  std::function<double(double)> custom_;
  std::string custom_label_;
};

nlohmann::json to_json(const FunctionParam& phi);
FunctionParam function_param_from_json(const nlohmann::json& j);

/// An interpolation parameter psi on (0, inf).
class InterpParam {
 public:
  InterpParam(std::function<double(double)> evaluator, std::string label);

  static InterpParam power(double theta);

  double operator()(double r) const { return f_(r); }
  const std::string& label() const { return label_; }

 private:
  std::function<double(double)> f_;
  std::string label_;
};

struct SlowVariationReport {
  std::vector<double> radii;        // 1e3, 1e4, ..., r_max
  std::vector<double> deviations;   // max over lambda of |phi(lambda r)/phi(r) - 1|
  double max_deviation = 0.0;       // value at r_max
  bool pass = false;
};

/// Heuristic Karamata diagnostic: PASS when the deviation sequence is
/// non-increasing and its final value is below 0.1.
SlowVariationReport check_slow_variation(const FunctionParam& phi,
                                         const std::vector<double>& lambdas,
                                         double r_max);

/// psi(r) = r^{(s-s0)/(s1-s0)} phi(r^{1/(s1-s0)}) for r >= 1, phi(1) below.
InterpParam build_psi(double s0, double s, double s1, const FunctionParam& phi);

/// omega(r) = alpha(r) psi(beta(r)/alpha(r)).
InterpParam reiterate(const InterpParam& alpha, const InterpParam& beta, const InterpParam& psi);

/// alpha and beta of the reiteration that reduces [H^{s-eps;phi}, H^{s+eps;phi}]_{1/2}
/// to a pair of unweighted spaces of orders s -/+ (eps + delta).
InterpParam half_reduction_alpha(double eps, double delta, const FunctionParam& phi);
InterpParam half_reduction_beta(double eps, double delta, const FunctionParam& phi);

struct MembershipCheck {
  double max_on_compacts = 0.0;   // sup psi over sampled [a, b] in (0, inf)
  double max_inverse_tail = 0.0;  // sup 1/psi over sampled [1, 1e8]
  bool pass = false;
};

/// Sampled check of membership in class B.
MembershipCheck check_interp_membership(const InterpParam& psi);

struct PowerBounds {
  double c0 = 0.0;
  double c1 = 0.0;
};

/// Sampled constants with c0 r^{s0-s} <= phi(r) <= c1 r^{s1-s} on [1, 1e8].
PowerBounds estimate_power_bounds(const FunctionParam& phi, double s0, double s, double s1);

struct PseudoconcavityReport {
  double min_slope = 0.0;        // of log psi against log r
  double max_slope = 0.0;
  double max_convexity = 0.0;    // largest positive second difference
  bool advisory_pass = false;
};

/// Advisory only: log-log slopes in [0, 1] and near-concave curve on [1e2, 1e8].
PseudoconcavityReport check_pseudoconcavity(const InterpParam& psi);

}  // namespace hoermander
