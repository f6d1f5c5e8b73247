#include "hoermander/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hoermander/errors.hpp"

namespace hoermander {

namespace {

double iterated_log_product(double r, const std::vector<double>& theta) {
  double ell = 1.0 + std::log(std::max(r, 1.0));
  double value = 1.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] != 0.0) value *= std::pow(ell, theta[i]);
    ell = 1.0 + std::log(ell);
  }
  return value;
}

std::string theta_string(const std::vector<double>& theta) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < theta.size(); ++i) os << (i ? "," : "") << theta[i];
  os << "]";
  return os.str();
}

}  // namespace

FunctionParam::FunctionParam() = default;

FunctionParam FunctionParam::log_power(std::vector<double> theta) {
  FunctionParam p;
  p.kind_ = ParamKind::LogPower;
  p.theta_ = std::move(theta);
  return p;
}

FunctionParam FunctionParam::constant(double value) {
  if (!(value > 0.0)) throw NonPositiveValue("constant function parameter must be positive");
  FunctionParam p;
  p.kind_ = ParamKind::Constant;
  p.value_ = value;
  return p;
}

FunctionParam FunctionParam::power_times_slow(double base_power, std::vector<double> theta) {
  FunctionParam p;
  p.kind_ = ParamKind::PowerTimesSlow;
  p.base_power_ = base_power;
  p.theta_ = std::move(theta);
  return p;
}

FunctionParam FunctionParam::custom(std::function<double(double)> evaluator, std::string label) {
  FunctionParam p;
  p.kind_ = ParamKind::Custom;
  p.custom_ = std::move(evaluator);
  p.custom_label_ = std::move(label);
  return p;
}

double FunctionParam::operator()(double r) const {
  switch (kind_) {
    case ParamKind::Constant:
      return value_;
    case ParamKind::LogPower:
      return iterated_log_product(r, theta_);
    case ParamKind::PowerTimesSlow:
      return std::pow(std::max(r, 1.0), base_power_) * iterated_log_product(r, theta_);
    case ParamKind::Custom:
      return custom_(r);
  }
  return 0.0;
}

std::string FunctionParam::label() const {
  switch (kind_) {
    case ParamKind::Constant: {
      std::ostringstream os;
      os << "Constant(" << value_ << ")";
      return os.str();
    }
    case ParamKind::LogPower:
      return "LogPower" + theta_string(theta_);
    case ParamKind::PowerTimesSlow: {
      std::ostringstream os;
      os << "PowerTimesSlow(" << base_power_ << "," << theta_string(theta_) << ")";
      return os.str();
    }
    case ParamKind::Custom:
      return "Custom(" + custom_label_ + ")";
  }
  return {};
}

void FunctionParam::validate() const {
  for (int e = 0; e <= 8; ++e) {
    const double r = std::pow(10.0, e);
    const double v = (*this)(r);
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << label() << " is not positive at r = " << r;
      throw NonPositiveValue(os.str());
    }
  }
}

nlohmann::json to_json(const FunctionParam& phi) {
  switch (phi.kind()) {
    case ParamKind::Constant:
      return {{"kind", "Constant"}, {"value", phi.constant_value()}};
    case ParamKind::LogPower:
      return {{"kind", "LogPower"}, {"theta", phi.exponents()}};
    case ParamKind::PowerTimesSlow:
      return {{"kind", "PowerTimesSlow"}, {"base_power", phi.base_power()}, {"theta", phi.exponents()}};
    case ParamKind::Custom:
      throw InvalidArgument("Custom function parameters are not serializable");
  }
  return {};
}

FunctionParam function_param_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  FunctionParam phi;
  if (kind == "LogPower") {
    phi = FunctionParam::log_power(j.at("theta").get<std::vector<double>>());
  } else if (kind == "Constant") {
    phi = FunctionParam::constant(j.value("value", 1.0));
  } else if (kind == "PowerTimesSlow") {
    phi = FunctionParam::power_times_slow(j.at("base_power").get<double>(),
                                          j.value("theta", std::vector<double>{}));
  } else {
    throw InvalidArgument("unknown function parameter kind: " + kind);
  }
  phi.validate();
  return phi;
}

InterpParam::InterpParam(std::function<double(double)> evaluator, std::string label)
    : f_(std::move(evaluator)), label_(std::move(label)) {}

InterpParam InterpParam::power(double theta) {
  std::ostringstream os;
  os << "r^" << theta;
  return InterpParam([theta](double r) { return std::pow(r, theta); }, os.str());
}

SlowVariationReport check_slow_variation(const FunctionParam& phi,
                                         const std::vector<double>& lambdas,
                                         double r_max) {
  if (lambdas.empty()) throw InvalidArgument("lambda set is empty");
  for (double l : lambdas) {
    if (l < 0.25 || l > 4.0) throw InvalidArgument("lambda outside [1/4, 4]");
  }
  if (r_max < 1e3) throw InvalidArgument("r_max must be at least 1e3");

  SlowVariationReport rep;
  for (double r = 1e3; r <= r_max * (1.0 + 1e-12); r *= 10.0) rep.radii.push_back(r);
  if (rep.radii.back() < r_max * (1.0 - 1e-12)) rep.radii.push_back(r_max);

  for (double r : rep.radii) {
    const double base = phi(r);
    if (!(base > 0.0)) throw NonPositiveValue(phi.label() + " is not positive on the sample grid");
    double dev = 0.0;
    for (double l : lambdas) {
      const double v = phi(l * r);
      if (!(v > 0.0)) throw NonPositiveValue(phi.label() + " is not positive on the sample grid");
      dev = std::max(dev, std::abs(v / base - 1.0));
    }
    rep.deviations.push_back(dev);
  }
  rep.max_deviation = rep.deviations.back();
  bool non_increasing = true;
  for (std::size_t i = 1; i < rep.deviations.size(); ++i) {
    if (rep.deviations[i] > rep.deviations[i - 1] * (1.0 + 1e-12) + 1e-15) non_increasing = false;
  }
  rep.pass = non_increasing && rep.max_deviation < 0.1;
  return rep;
}

InterpParam build_psi(double s0, double s, double s1, const FunctionParam& phi) {
  if (!(s0 < s && s < s1)) {
    std::ostringstream os;
    os << "build_psi requires s0 < s < s1, got (" << s0 << ", " << s << ", " << s1 << ")";
    throw OrderingViolation(os.str());
  }
  const double theta = (s - s0) / (s1 - s0);
  const double inv = 1.0 / (s1 - s0);
  std::ostringstream os;
  os << "psi(" << s0 << "," << s << "," << s1 << ";" << phi.label() << ")";
  return InterpParam(
      [theta, inv, phi](double r) {
        if (r < 1.0) return phi(1.0);
        return std::pow(r, theta) * phi(std::pow(r, inv));
      },
      os.str());
}

InterpParam reiterate(const InterpParam& alpha, const InterpParam& beta, const InterpParam& psi) {
  const double q6 = alpha(1e6) / beta(1e6);
  const double q7 = alpha(1e7) / beta(1e7);
  const double q8 = alpha(1e8) / beta(1e8);
  if (!std::isfinite(q8) || (q8 > q7 * (1.0 + 1e-9) && q7 > q6 * (1.0 + 1e-9))) {
    throw UnboundedRatio("alpha/beta grows across the last sampled decades");
  }
  return InterpParam(
      [alpha, beta, psi](double r) {
        const double a = alpha(r);
        return a * psi(beta(r) / a);
      },
      "omega[" + alpha.label() + "," + beta.label() + "," + psi.label() + "]");
}

InterpParam half_reduction_alpha(double eps, double delta, const FunctionParam& phi) {
  const double d = 2.0 * eps + 2.0 * delta;
  return InterpParam(
      [=](double r) {
        if (r < 1.0) return 1.0;
        return std::pow(r, delta / d) * phi(std::pow(r, 1.0 / d));
      },
      "alpha");
}

InterpParam half_reduction_beta(double eps, double delta, const FunctionParam& phi) {
  const double d = 2.0 * eps + 2.0 * delta;
  return InterpParam(
      [=](double r) {
        if (r < 1.0) return 1.0;
        return std::pow(r, (2.0 * eps + delta) / d) * phi(std::pow(r, 1.0 / d));
      },
      "beta");
}

MembershipCheck check_interp_membership(const InterpParam& psi) {
  MembershipCheck m;
  bool ok = true;
  for (int i = 0; i <= 120; ++i) {
    const double r = std::pow(10.0, -3.0 + 6.0 * i / 120.0);
    const double v = psi(r);
    if (!(v > 0.0) || !std::isfinite(v)) ok = false;
    m.max_on_compacts = std::max(m.max_on_compacts, v);
  }
  for (int i = 0; i <= 160; ++i) {
    const double r = std::pow(10.0, 8.0 * i / 160.0);
    const double v = psi(r);
    if (!(v > 0.0)) {
      ok = false;
      continue;
    }
    m.max_inverse_tail = std::max(m.max_inverse_tail, 1.0 / v);
  }
  m.pass = ok && std::isfinite(m.max_on_compacts) && std::isfinite(m.max_inverse_tail);
  return m;
}

PowerBounds estimate_power_bounds(const FunctionParam& phi, double s0, double s, double s1) {
  if (!(s0 < s && s < s1)) throw OrderingViolation("power bounds require s0 < s < s1");
  PowerBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i <= 400; ++i) {
    const double r = std::pow(10.0, 8.0 * i / 400.0);
    const double v = phi(r);
    b.c0 = std::min(b.c0, v / std::pow(r, s0 - s));
    b.c1 = std::max(b.c1, v / std::pow(r, s1 - s));
  }
  return b;
}

PseudoconcavityReport check_pseudoconcavity(const InterpParam& psi) {
  constexpr int n = 60;
  std::vector<double> x(n + 1), y(n + 1);
  for (int i = 0; i <= n; ++i) {
    x[i] = std::log(1e2) + (std::log(1e8) - std::log(1e2)) * i / n;
    y[i] = std::log(psi(std::exp(x[i])));
  }
  PseudoconcavityReport rep;
  rep.min_slope = std::numeric_limits<double>::infinity();
  rep.max_slope = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double slope = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    rep.min_slope = std::min(rep.min_slope, slope);
    rep.max_slope = std::max(rep.max_slope, slope);
  }
  for (int i = 1; i < n; ++i) {
    rep.max_convexity = std::max(rep.max_convexity, y[i + 1] - 2.0 * y[i] + y[i - 1]);
  }
  rep.advisory_pass = rep.min_slope > -1e-6 && rep.max_slope < 1.0 + 1e-6;
  return rep;
}

}  // namespace hoermander
