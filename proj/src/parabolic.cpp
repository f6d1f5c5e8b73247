#include "hoermander/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hoermander {

namespace {

constexpr int kCoefficientOrder = 8;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::complex<double> ipow(int n) {
  static const std::complex<double> p[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return p[n % 4];
}

// Distance from z to the arc {|p| = R, Re p >= 0}.
double arc_distance(std::complex<double> z, double radius) {
  if (radius <= 0.0) return std::abs(z);
  if (z.real() >= 0.0) return std::abs(std::abs(z) - radius);
  const std::complex<double> top(0.0, radius);
  return std::min(std::abs(z - top), std::abs(z + top));
}

// Minimum over rho in [0, 1] of margin(rho): grid search, then golden section.
template <typename F>
std::pair<double, double> minimize_unit(F margin, int grid = 200, int iterations = 100) {
  int best = 0;
  double best_value = margin(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double v = margin(double(i) / grid);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = std::max(0.0, (best - 1.0) / grid);
  double b = std::min(1.0, (best + 1.0) / grid);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = margin(c), fd = margin(d);
  for (int it = 0; it < iterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = margin(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = margin(d);
    }
  }
  double rho = fc < fd ? c : d;
  double value = std::min(fc, fd);
  if (best_value < value) {
    rho = double(best) / grid;
    value = best_value;
  }
  return {rho, value};
}

std::complex<double> principal_symbol(const ParabolicProblem& p, double x, double y, double t,
                                      std::complex<double> w0, std::complex<double> w1) {
  std::complex<double> q = 0.0;
  for (const auto& term : p.terms) {
    if (term.alpha[0] + term.alpha[1] != 2) continue;
    q += term.a(x, y, t) * std::pow(w0, term.alpha[0]) * std::pow(w1, term.alpha[1]);
  }
  return q;
}

Geometry geometry_from_string(const std::string& s) {
  if (s == "Interval") return Geometry::Interval;
  if (s == "PeriodicStrip") return Geometry::PeriodicStrip;
  throw InvalidArgument("unknown geometry '" + s + "'");
}

}  // namespace

ParabolicProblem ParabolicProblem::heat(Geometry geometry, BoundaryKind boundary, double tau) {
  ParabolicProblem p;
  p.geometry = geometry;
  p.tau = tau;
  p.terms.push_back({{2, 0}, Expr::parse("1")});
  if (geometry == Geometry::PeriodicStrip) p.terms.push_back({{0, 2}, Expr::parse("1")});
  p.boundary = boundary;
  if (boundary == BoundaryKind::FirstOrder) {
    // i d/dnu with the inward normal: +1 at x = 0, -1 at x = 1.
    p.b = {Expr::parse("0"), Expr::parse("1-2*x")};
    if (geometry == Geometry::PeriodicStrip) p.b.push_back(Expr::parse("0"));
  }
  return p;
}

void ParabolicProblem::validate() const {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  for (const auto& term : terms) {
    if (term.alpha[0] < 0 || term.alpha[1] < 0 || term.alpha[0] + term.alpha[1] > 2) {
      throw InvalidArgument("coefficient multi-index must satisfy |alpha| <= 2");
    }
    if (geometry == Geometry::Interval && term.alpha[1] != 0) {
      throw InvalidArgument("the interval geometry has no y derivatives");
    }
  }
  if (boundary == BoundaryKind::FirstOrder && static_cast<int>(b.size()) != spatial_dim() + 1) {
    throw InvalidArgument("first-order boundary operator needs b_0..b_n");
  }
}

ParabolicProblem problem_from_json(const nlohmann::json& j) {
  ParabolicProblem p;
  p.geometry = geometry_from_string(j.value("geometry", std::string("Interval")));
  p.tau = j.value("tau", 1.0);
  for (const auto& t : j.at("a")) {
    CoefficientTerm term;
    const auto alpha = t.at("alpha").get<std::vector<int>>();
    if (alpha.empty() || alpha.size() > 2) throw InvalidArgument("alpha must have one or two entries");
    term.alpha = {alpha[0], alpha.size() > 1 ? alpha[1] : 0};
    term.a = Expr::parse(t.at("expr").get<std::string>());
    p.terms.push_back(term);
  }
  const auto& bnd = j.at("boundary");
  const std::string type = bnd.at("type").get<std::string>();
  if (type == "Dirichlet") {
    p.boundary = BoundaryKind::Dirichlet;
  } else if (type == "FirstOrder") {
    p.boundary = BoundaryKind::FirstOrder;
    for (const auto& e : bnd.at("b")) p.b.push_back(Expr::parse(e.get<std::string>()));
  } else {
    throw InvalidArgument("unknown boundary type '" + type + "'");
  }
  p.validate();
  return p;
}

nlohmann::json to_json(const ParabolicProblem& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& t : p.terms) a.push_back({{"alpha", {t.alpha[0], t.alpha[1]}}, {"expr", t.a.text()}});
  nlohmann::json bnd = {{"type", p.boundary == BoundaryKind::Dirichlet ? "Dirichlet" : "FirstOrder"}};
  if (p.boundary == BoundaryKind::FirstOrder) {
    nlohmann::json b = nlohmann::json::array();
    for (const auto& e : p.b) b.push_back(e.text());
    bnd["b"] = b;
  }
  return {{"geometry", p.geometry == Geometry::Interval ? "Interval" : "PeriodicStrip"},
          {"tau", p.tau},
          {"a", a},
          {"boundary", bnd}};
}

ConditionCheck check_petrovskii(const ParabolicProblem& p, int samples) {
  if (samples < 1) throw InvalidArgument("sample count must be positive");
  std::mt19937_64 rng(1234567);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ConditionCheck out;
  out.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    // The first samples visit the corners of the cylinder.
    const double x = i < 4 ? double(i % 2) : unit(rng);
    const double t = i < 4 ? p.tau * (i / 2) : p.tau * unit(rng);
    const double y = p.geometry == Geometry::PeriodicStrip ? 2.0 * M_PI * unit(rng) : 0.0;
    // Coefficients at the point; the symbol is then cheap in the direction.
    std::vector<std::complex<double>> coeff;
    for (const auto& term : p.terms) coeff.push_back(term.a(x, y, t));
    auto symbol = [&](double w0, double w1) {
      std::complex<double> q = 0.0;
      for (std::size_t k = 0; k < p.terms.size(); ++k) {
        const auto& a = p.terms[k].alpha;
        if (a[0] + a[1] == 2) q += coeff[k] * std::pow(w0, a[0]) * std::pow(w1, a[1]);
      }
      return q;
    };
    auto margin_at = [&](std::complex<double> q) {
      return minimize_unit([&](double r) { return arc_distance(-r * r * q, 1.0 - r * r); });
    };
    double w0 = 1.0, w1 = 0.0;
    if (p.geometry == Geometry::PeriodicStrip) {
      // The symbol is even in xi, so angles in [0, pi) cover all directions.
      // The minimizer over the angle catches isolated degenerate directions.
      const double angle = M_PI * minimize_unit([&](double a) {
                                    return margin_at(symbol(std::cos(M_PI * a), std::sin(M_PI * a))).second;
                                  }, 64, 40).first;
      w0 = std::cos(angle);
      w1 = std::sin(angle);
    } else if (i % 2 == 1) {
      w0 = -1.0;
    }
    const std::complex<double> q = symbol(w0, w1);
    const auto [rho, value] = margin_at(q);
    if (value < out.margin) {
      out.margin = value;
      const std::complex<double> z = -rho * rho * q;
      const double radius = 1.0 - rho * rho;
      std::complex<double> pp = z.real() >= 0.0 && std::abs(z) > 0.0 ? radius * z / std::abs(z)
                                : std::complex<double>(0.0, z.imag() >= 0.0 ? radius : -radius);
      out.worst_point = {x, y, t, rho * w0, rho * w1, pp.real(), pp.imag()};
    }
  }
  out.pass = out.margin > 1e-9;
  return out;
}

CoveringCheck check_covering(const ParabolicProblem& p, int samples) {
  if (p.boundary != BoundaryKind::FirstOrder) throw NotFirstOrder("covering applies to first-order boundary operators");
  p.validate();
  std::mt19937_64 rng(7654321);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CoveringCheck out;
  out.normal.margin = std::numeric_limits<double>::infinity();
  out.symbol.margin = std::numeric_limits<double>::infinity();
  bool any_symbol = false;
  const bool strip = p.geometry == Geometry::PeriodicStrip;
  for (int i = 0; i < samples; ++i) {
    const int side = i % 2;
    const double x = side;
    const double nu = side == 0 ? 1.0 : -1.0;
    const double t = i < 4 ? p.tau * ((i / 2) % 2) : p.tau * unit(rng);
    const double y = strip ? 2.0 * M_PI * unit(rng) : 0.0;
    const std::complex<double> bn = p.b[1](x, y, t) * nu;
    const double a_margin = std::abs(bn);
    if (a_margin < out.normal.margin) {
      out.normal.margin = a_margin;
      out.normal.worst_point = {x, y, t};
    }
    if (a_margin <= 1e-9) continue;
    any_symbol = true;
    // eta = rho e with e = (0, +-1); w = eta + zeta nu = rho (e + zeta_hat nu).
    const double e = strip ? (unit(rng) < 0.5 ? 1.0 : -1.0) : 0.0;
    const std::complex<double> be = strip ? p.b[2](x, y, t) * e : 0.0;
    const std::complex<double> zeta_hat = -be / bn;
    const std::complex<double> q = principal_symbol(p, x, y, t, zeta_hat * nu, e);
    std::pair<double, double> best;
    if (strip) {
      best = minimize_unit([&](double r) { return arc_distance(-r * r * q, 1.0 - r); });
    } else {
      best = {0.0, arc_distance(0.0, 1.0)};
    }
    if (best.second < out.symbol.margin) {
      out.symbol.margin = best.second;
      out.symbol.worst_point = {x, y, t, 0.0, best.first * e};
    }
  }
  if (!any_symbol) out.symbol.margin = 0.0;
  out.normal.pass = out.normal.margin > 1e-9;
  out.symbol.pass = out.symbol.margin > 1e-9;
  out.pass = out.normal.pass && out.symbol.pass;
  return out;
}

int compat_count(double s, int l) {
  const double c = l == 0 ? 0.75 : 1.25;
  return std::max(0, static_cast<int>(std::ceil(s / 2.0 - c)));
}

bool in_E(double s, int l) {
  const double r = (s - (l == 0 ? 1.5 : 0.5)) / 2.0;
  return r >= 1.0 && std::floor(r) == r;
}

std::pair<double, double> constant_count_interval(int l, int r) {
  if (l == 0) {
    if (r < 1) throw InvalidArgument("Dirichlet problems have at least one condition for s > 2");
    return r == 1 ? std::make_pair(2.0, 3.5) : std::make_pair(2.0 * r - 0.5, 2.0 * r + 1.5);
  }
  if (r < 0) throw InvalidArgument("condition count must be nonnegative");
  return r == 0 ? std::make_pair(2.0, 2.5) : std::make_pair(2.0 * r + 0.5, 2.0 * r + 2.5);
}

ProblemData ProblemData::zero(const CylinderGrid& grid) {
  return {Eigen::VectorXcd::Zero(grid.omega().size()), Eigen::VectorXcd::Zero(grid.lateral().size()),
          Eigen::VectorXcd::Zero(grid.base().size())};
}

Eigen::VectorXcd ProblemData::stacked() const {
  Eigen::VectorXcd v(f.size() + g.size() + h.size());
  v << f, g, h;
  return v;
}

ProblemData ProblemData::unstack(const CylinderGrid& grid, const Eigen::VectorXcd& v) {
  const Eigen::Index nf = grid.omega().size(), ng = grid.lateral().size(), nh = grid.base().size();
  if (v.size() != nf + ng + nh) throw DimensionMismatch("stacked data has the wrong length");
  return {v.head(nf), v.segment(nf, ng), v.tail(nh)};
}

DiscreteOperator::DiscreteOperator(const ParabolicProblem& problem, const CylinderGrid& grid)
    : problem_(problem), grid_(grid) {
  problem_.validate();
  if (problem_.geometry != grid_.geometry) throw DimensionMismatch("problem and grid geometries differ");
  if (std::abs(problem_.tau - grid_.tau) > 1e-14) throw DimensionMismatch("problem and grid tau differ");
  const GridShape om = grid_.omega(), ba = grid_.base(), la = grid_.lateral();
  for (const auto& term : problem_.terms) {
    Eigen::VectorXcd a(om.size());
    for (int ix = 0; ix < om.n0; ++ix)
      for (int iy = 0; iy < om.n1; ++iy)
        for (int it = 0; it < om.n2; ++it) a(om.index(ix, iy, it)) = term.a(grid_.x(ix), grid_.y(iy), grid_.t(it));
    a_omega_.push_back(a);
    std::vector<Eigen::VectorXcd> d(kCoefficientOrder + 1, Eigen::VectorXcd(ba.size()));
    for (int ix = 0; ix < ba.n0; ++ix) {
      for (int iy = 0; iy < ba.n1; ++iy) {
        const auto td = term.a.time_derivatives(grid_.x(ix), grid_.y(iy), 0.0, kCoefficientOrder);
        for (int i = 0; i <= kCoefficientOrder; ++i) d[i](ba.index(ix, iy, 0)) = td[i];
      }
    }
    a_initial_.push_back(d);
  }
  for (const auto& b : problem_.b) {
    Eigen::VectorXcd v(la.size());
    for (int side = 0; side < 2; ++side)
      for (int iy = 0; iy < la.n1; ++iy)
        for (int it = 0; it < la.n2; ++it) v(la.index(side, iy, it)) = b(double(side), grid_.y(iy), grid_.t(it));
    b_lateral_.push_back(v);
    std::vector<Eigen::VectorXcd> d(kCoefficientOrder + 1, Eigen::VectorXcd(2 * grid_.ny));
    for (int side = 0; side < 2; ++side) {
      for (int iy = 0; iy < grid_.ny; ++iy) {
        const auto td = b.time_derivatives(double(side), grid_.y(iy), 0.0, kCoefficientOrder);
        for (int i = 0; i <= kCoefficientOrder; ++i) d[i](side * grid_.ny + iy) = td[i];
      }
    }
    b_initial_.push_back(d);
  }
}

Eigen::VectorXcd DiscreteOperator::omega_derivative(const Eigen::VectorXcd& u, int ax, int ay) const {
  const GridShape s = grid_.omega();
  Eigen::VectorXcd d = differentiate(s, 0, grid_.hx(), u, ax);
  if (ay > 0) d = differentiate_periodic(s, grid_.y_period(), d, ay);
  return ipow(ax + ay) * d;
}

Eigen::VectorXcd DiscreteOperator::base_derivative(const Eigen::VectorXcd& w, int ax, int ay) const {
  const GridShape s = grid_.base();
  Eigen::VectorXcd d = differentiate(s, 0, grid_.hx(), w, ax);
  if (ay > 0) d = differentiate_periodic(s, grid_.y_period(), d, ay);
  return ipow(ax + ay) * d;
}

Eigen::VectorXcd DiscreteOperator::spatial_part(const Eigen::VectorXcd& u) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(u.size());
  for (std::size_t i = 0; i < problem_.terms.size(); ++i) {
    const auto& alpha = problem_.terms[i].alpha;
    out += (a_omega_[i].array() * omega_derivative(u, alpha[0], alpha[1]).array()).matrix();
  }
  return out;
}

Eigen::VectorXcd DiscreteOperator::boundary_operator(const Eigen::VectorXcd& u) const {
  if (problem_.boundary != BoundaryKind::FirstOrder) throw NotFirstOrder("problem has a Dirichlet condition");
  Eigen::VectorXcd g = (b_lateral_[0].array() * restrict_lateral(grid_, u).array()).matrix();
  g += (b_lateral_[1].array() * restrict_lateral(grid_, omega_derivative(u, 1, 0)).array()).matrix();
  if (problem_.spatial_dim() == 2) {
    g += (b_lateral_[2].array() * restrict_lateral(grid_, omega_derivative(u, 0, 1)).array()).matrix();
  }
  return g;
}

std::vector<Eigen::VectorXcd> DiscreteOperator::compute_v(const Eigen::VectorXcd& f, const Eigen::VectorXcd& h,
                                                          int k_max) const {
  if (f.size() != grid_.omega().size() || h.size() != grid_.base().size()) {
    throw DimensionMismatch("f or h does not match the grid");
  }
  if (k_max > kCoefficientOrder + 1) throw InsufficientSmoothness("recurrence order exceeds coefficient jets");
  std::vector<Eigen::VectorXcd> v{h};
  // dv[q][i] = D^alpha_i v_q.
  std::vector<std::vector<Eigen::VectorXcd>> dv;
  for (int k = 1; k <= k_max; ++k) {
    const int q_new = k - 1;
    dv.emplace_back();
    for (const auto& term : problem_.terms) dv[q_new].push_back(base_derivative(v[q_new], term.alpha[0], term.alpha[1]));
    Eigen::VectorXcd next = initial_derivative(grid_.omega(), grid_.ht(), f, k - 1);
    for (std::size_t i = 0; i < problem_.terms.size(); ++i) {
      for (int q = 0; q < k; ++q) {
        next -= binomial(k - 1, q) * (a_initial_[i][k - 1 - q].array() * dv[q][i].array()).matrix();
      }
    }
    v.push_back(next);
  }
  return v;
}

Eigen::VectorXcd DiscreteOperator::boundary_recurrence(const std::vector<Eigen::VectorXcd>& v, int k) const {
  if (problem_.boundary != BoundaryKind::FirstOrder) throw NotFirstOrder("problem has a Dirichlet condition");
  if (static_cast<int>(v.size()) <= k) throw InvalidArgument("not enough recurrence functions");
  if (k > kCoefficientOrder) throw InsufficientSmoothness("recurrence order exceeds coefficient jets");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * grid_.ny);
  for (int q = 0; q <= k; ++q) {
    const double c = binomial(k, q);
    Eigen::VectorXcd term = (b_initial_[0][k - q].array() * restrict_boundary(grid_, v[q]).array()).matrix();
    term += (b_initial_[1][k - q].array() * restrict_boundary(grid_, base_derivative(v[q], 1, 0)).array()).matrix();
    if (problem_.spatial_dim() == 2) {
      term += (b_initial_[2][k - q].array() * restrict_boundary(grid_, base_derivative(v[q], 0, 1)).array()).matrix();
    }
    out += c * term;
  }
  return out;
}

ProblemData apply_lambda(const DiscreteOperator& op, const Eigen::VectorXcd& u) {
  const CylinderGrid& grid = op.grid();
  if (u.size() != grid.omega().size()) throw DimensionMismatch("u is not an Omega-bar grid function");
  ProblemData d;
  d.f = differentiate(grid.omega(), 2, grid.ht(), u, 1) + op.spatial_part(u);
  d.g = op.problem().boundary == BoundaryKind::Dirichlet ? restrict_lateral(grid, u) : op.boundary_operator(u);
  d.h = restrict_initial(grid, u);
  return d;
}

Eigen::VectorXcd compatibility_rhs(const DiscreteOperator& op, const std::vector<Eigen::VectorXcd>& v, int k) {
  if (op.problem().boundary == BoundaryKind::Dirichlet) return restrict_boundary(op.grid(), v[k]);
  return op.boundary_recurrence(v, k);
}

nlohmann::json CompatibilityReport::to_json() const {
  return {{"s", s},           {"l", l},
          {"count", count},   {"at_jump", at_jump},
          {"stencil_order", stencil_order}, {"residuals", residuals},
          {"tolerance", tolerance}, {"pass", pass}};
}

CompatibilityReport check_compatibility(const DiscreteOperator& op, const ProblemData& data, double s, double tol) {
  if (!(s > 2.0)) throw InvalidArgument("compatibility conditions are defined for s > 2");
  const CylinderGrid& grid = op.grid();
  CompatibilityReport rep;
  rep.s = s;
  rep.l = op.problem().l();
  rep.tolerance = tol;
  rep.at_jump = in_E(s, rep.l);
  rep.count = rep.at_jump ? compat_count(s, rep.l) + 1 : compat_count(s, rep.l);
  if (rep.count == 0) {
    rep.pass = true;
    return rep;
  }
  rep.stencil_order = 4;
  rep.v = op.compute_v(data.f, data.h, rep.count - 1);
  CylinderNorms norms(grid);
  const double scale = std::max(1.0, data.g.norm());
  rep.pass = true;
  for (int k = 0; k < rep.count; ++k) {
    const Eigen::VectorXcd lhs = initial_derivative(grid.lateral(), grid.ht(), data.g, k);
    const Eigen::VectorXcd rhs = compatibility_rhs(op, rep.v, k);
    const double order = s - 1.5 - 2.0 * k - rep.l;
    const double r = norms.boundary(lhs - rhs, order) / scale;
    rep.residuals.push_back(r);
    rep.pass = rep.pass && r < tol;
  }
  return rep;
}

double target_norm(const DiscreteOperator& op, const CylinderNorms& norms, const ProblemData& data, double s,
                   const FunctionParam& phi) {
  if (!(norms.grid() == op.grid())) throw DimensionMismatch("norms and operator use different grids");
  const double a = norms.omega(data.f, s - 2.0, phi);
  const double b = norms.lateral(data.g, s - 0.5 - op.problem().l(), phi);
  const double c = norms.base(data.h, s - 1.0, phi);
  return std::sqrt(a * a + b * b + c * c);
}

}  // namespace hoermander
