#pragma once

// Parabolic problems on flat cylinders: A u = d_t u + sum a_alpha D^alpha u
// with D_j = i d/dx_j, Dirichlet or first-order boundary operators, the
// parabolicity and covering checks, compatibility recurrences and the
// problem operator Lambda_l.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "hoermander/cylinder_norms.hpp"
#include "hoermander/expr.hpp"
#include "hoermander/grid.hpp"
#include "hoermander/params.hpp"

namespace hoermander {

/// a_alpha D^alpha with alpha = (alpha_x, alpha_y); alpha_y = 0 on the interval.
struct CoefficientTerm {
  std::array<int, 2> alpha{0, 0};
  Expr a;
};

enum class BoundaryKind { Dirichlet, FirstOrder };

struct ParabolicProblem {
  Geometry geometry = Geometry::Interval;
  double tau = 1.0;
  std::vector<CoefficientTerm> terms;
  BoundaryKind boundary = BoundaryKind::Dirichlet;
  /// b_0, b_1, ..., b_n of B u = sum_j b_j D_j u + b_0 u (FirstOrder only).
  std::vector<Expr> b;

  int spatial_dim() const { return geometry == Geometry::Interval ? 1 : 2; }
  int l() const { return boundary == BoundaryKind::Dirichlet ? 0 : 1; }

  /// d_t - Laplacian.
  static ParabolicProblem heat(Geometry geometry, BoundaryKind boundary = BoundaryKind::Dirichlet,
                               double tau = 1.0);

  /// Throws InvalidArgument on malformed terms.
  void validate() const;
};

/// {"geometry": "Interval"|"PeriodicStrip", "tau": 1,
///  "a": [{"alpha": [2, 0], "expr": "1"}, ...],
///  "boundary": {"type": "Dirichlet"} | {"type": "FirstOrder", "b": ["0", "1-2*x", ...]}}
ParabolicProblem problem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ParabolicProblem& p);

struct ConditionCheck {
  double margin = 0.0;             // smallest sampled |symbol|
  std::vector<double> worst_point;  // (x, y, t, xi..., Re p, Im p)
  bool pass = false;
};

/// Samples (x, y, t) over the closed cylinder and minimizes over unit directions omega; for
/// each, minimizes |p + rho^2 q(omega)| over rho in [0, 1] and p on the arc
/// |p| = 1 - rho^2, Re p >= 0 (the normalization |xi|^2 + |p| = 1). PASS when
/// the margin exceeds 1e-9.
ConditionCheck check_petrovskii(const ParabolicProblem& p, int samples = 1000);

struct CoveringCheck {
  ConditionCheck normal;    // part a): |sum b_j nu_j|
  ConditionCheck symbol;    // part b): |p + sum a_alpha (eta + zeta nu)^alpha|
  bool pass = false;
};

/// Throws NotFirstOrder for Dirichlet problems.
CoveringCheck check_covering(const ParabolicProblem& p, int samples = 1000);

/// #{k >= 0 : k < s/2 - 3/4} (l = 0) or #{k >= 0 : k < s/2 - 5/4} (l = 1).
int compat_count(double s, int l);
/// s in E_0 = {2r + 3/2} or E_1 = {2r + 1/2}, r >= 1.
bool in_E(double s, int l);
/// The open interval J_{l,r} on which compat_count equals r.
std::pair<double, double> constant_count_interval(int l, int r);

/// Data of the problem on a grid: f on Omega-bar, g on S-bar, h on G-bar.
struct ProblemData {
  Eigen::VectorXcd f, g, h;

  ProblemData operator+(const ProblemData& o) const { return {f + o.f, g + o.g, h + o.h}; }
  ProblemData operator-(const ProblemData& o) const { return {f - o.f, g - o.g, h - o.h}; }
  ProblemData operator*(std::complex<double> a) const { return {f * a, g * a, h * a}; }

  static ProblemData zero(const CylinderGrid& grid);
  /// f, g, h stacked into one vector, and back.
  Eigen::VectorXcd stacked() const;
  static ProblemData unstack(const CylinderGrid& grid, const Eigen::VectorXcd& v);
};

/// Coefficient samples on a grid with their t-derivatives at t = 0.
class DiscreteOperator {
 public:
  DiscreteOperator(const ParabolicProblem& problem, const CylinderGrid& grid);

  const ParabolicProblem& problem() const { return problem_; }
  const CylinderGrid& grid() const { return grid_; }

  /// sum a_alpha(., t) D^alpha w on Omega-bar.
  Eigen::VectorXcd spatial_part(const Eigen::VectorXcd& u) const;
  /// B u on S-bar.
  Eigen::VectorXcd boundary_operator(const Eigen::VectorXcd& u) const;

  /// v_0 = h, v_k = -sum_alpha sum_q C(k-1,q) d_t^{k-1-q} a_alpha(., 0) D^alpha v_q
  /// + d_t^{k-1} f(., 0), for k = 0..k_max, on G-bar.
  std::vector<Eigen::VectorXcd> compute_v(const Eigen::VectorXcd& f, const Eigen::VectorXcd& h,
                                          int k_max) const;
  /// B_k[v_0, ..., v_k] on Gamma.
  Eigen::VectorXcd boundary_recurrence(const std::vector<Eigen::VectorXcd>& v, int k) const;

  /// D^alpha on G-bar samples.
  Eigen::VectorXcd base_derivative(const Eigen::VectorXcd& w, int ax, int ay) const;

 private:
  Eigen::VectorXcd omega_derivative(const Eigen::VectorXcd& u, int ax, int ay) const;

  ParabolicProblem problem_;
  CylinderGrid grid_;
  std::vector<Eigen::VectorXcd> a_omega_;                    // per term, on Omega-bar
  std::vector<std::vector<Eigen::VectorXcd>> a_initial_;     // per term, d_t^i at t = 0 on G-bar
  std::vector<Eigen::VectorXcd> b_lateral_;                  // b_j on S-bar
  std::vector<std::vector<Eigen::VectorXcd>> b_initial_;     // b_j, d_t^i at t = 0 on Gamma
};

/// (f, g, h) = (A u, u|S or B u|S, u(., 0)).
ProblemData apply_lambda(const DiscreteOperator& op, const Eigen::VectorXcd& u);

struct CompatibilityReport {
  double s = 0.0;
  int l = 0;
  int count = 0;
  bool at_jump = false;           // s in E_l: count is the larger adjacent value
  int stencil_order = 0;          // accuracy order of the t = 0 stencils
  std::vector<Eigen::VectorXcd> v;
  std::vector<double> residuals;  // per condition k, in H^{s - 3/2 - 2k}(Gamma) (l = 1: s - 5/2 - 2k)
  double tolerance = 1e-8;
  bool pass = false;

  nlohmann::json to_json() const;
};

/// d_t^k g |Gamma - (v_k |Gamma or B_k) for k < count. The residual norms
/// are taken relative to max(1, ||g||_{l2}). PASS when all are below tol.
CompatibilityReport check_compatibility(const DiscreteOperator& op, const ProblemData& data, double s,
                                        double tol = 1e-8);

/// Right-hand side of the k-th condition on Gamma.
Eigen::VectorXcd compatibility_rhs(const DiscreteOperator& op, const std::vector<Eigen::VectorXcd>& v, int k);

/// The target-space norm sqrt(||f||^2 + ||g||^2 + ||h||^2) with orders
/// s - 2 (Omega), s - 1/2 - l (S), s - 1 (G).
double target_norm(const DiscreteOperator& op, const CylinderNorms& norms, const ProblemData& data, double s,
                   const FunctionParam& phi);

}  // namespace hoermander
