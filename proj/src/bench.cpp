#include "hoermander/bench.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hoermander/heat_solver.hpp"
#include "hoermander/interp.hpp"
#include "hoermander/traces.hpp"

namespace hoermander {

namespace {

double legendre_value(int n, double z) {
  double p0 = 1.0, p1 = z;
  if (n == 0) return p0;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * z * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::string geometry_name(Geometry g) { return g == Geometry::Interval ? "Interval" : "PeriodicStrip"; }

Eigen::MatrixXcd block_gram(const CylinderNorms& norms, double s, int l, const FunctionParam& phi) {
  const Eigen::MatrixXd kf = norms.gram(Component::Omega, s - 2.0, phi);
  const Eigen::MatrixXd kg = norms.gram(Component::Lateral, s - 0.5 - l, phi);
  const Eigen::MatrixXd kh = norms.gram(Component::Base, s - 1.0, phi);
  const Eigen::Index n = kf.rows() + kg.rows() + kh.rows();
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
  k.topLeftCorner(kf.rows(), kf.cols()) = kf.cast<std::complex<double>>();
  k.block(kf.rows(), kf.rows(), kg.rows(), kg.cols()) = kg.cast<std::complex<double>>();
  k.bottomRightCorner(kh.rows(), kh.cols()) = kh.cast<std::complex<double>>();
  return k;
}

}  // namespace

void BenchCase::validate() const {
  problem.validate();
  if (trials < 30) throw InvalidArgument("benchmarks need at least 30 trials");
  if (resolutions.size() < 2) throw InvalidArgument("benchmarks need at least two resolutions");
  for (double s : s_grid) {
    if (!(s > 2.0)) throw InvalidArgument("s must exceed 2");
    if (!jump_study && in_E(s, problem.l())) throw InvalidArgument("s lies in the jump set; set jump_study");
  }
  if (phis.empty()) throw InvalidArgument("at least one phi is required");
}

BenchCase bench_case_from_json(const nlohmann::json& j) {
  BenchCase b;
  b.problem = problem_from_json(j.at("problem"));
  b.s_grid = j.at("s_grid").get<std::vector<double>>();
  if (j.contains("phi")) {
    for (const auto& p : j.at("phi")) b.phis.push_back(function_param_from_json(p));
  } else {
    b.phis.push_back(FunctionParam());
  }
  b.trials = j.value("trials", 30);
  if (j.contains("resolutions")) b.resolutions = j.at("resolutions").get<std::vector<int>>();
  b.seed = j.value("seed", std::uint64_t{20240601});
  b.ny = j.value("ny", 4);
  b.jump_study = j.value("jump_study", false);
  b.validate();
  return b;
}

Eigen::VectorXcd trial_function(const CylinderGrid& grid, std::uint64_t seed, int trial) {
  std::mt19937_64 rng(seed * 104729ULL + static_cast<std::uint64_t>(trial));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int mmax = grid.geometry == Geometry::PeriodicStrip ? 1 : 0;
  const GridShape shape = grid.omega();
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(shape.size());
  for (int m = -mmax; m <= mmax; ++m) {
    Eigen::MatrixXcd c(5, 4);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 4; ++b) c(a, b) = {gauss(rng), gauss(rng)};
    for (int ix = 0; ix < grid.nx; ++ix) {
      for (int it = 0; it < grid.nt; ++it) {
        std::complex<double> v = 0.0;
        for (int a = 0; a < 5; ++a)
          for (int b = 0; b < 4; ++b)
            v += c(a, b) * legendre_value(a, 2.0 * grid.x(ix) - 1.0) * legendre_value(b, 2.0 * grid.t(it) / grid.tau - 1.0);
        for (int iy = 0; iy < grid.ny; ++iy) {
          u(shape.index(ix, iy, it)) += v * std::polar(1.0, m * grid.y(iy));
        }
      }
    }
  }
  return u;
}

nlohmann::json IsomorphismReport::to_json() const {
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& c : cells) {
    cj.push_back({{"s", c.s}, {"phi", c.phi}, {"resolution", c.resolution}, {"lower_ratio", c.lower},
                  {"upper_ratio", c.upper}, {"condition", c.condition}, {"trials", c.trials}, {"pass", c.pass}});
  }
  nlohmann::json dj = nlohmann::json::array();
  for (const auto& d : drifts) dj.push_back({{"s", d.s}, {"phi", d.phi}, {"drift", d.drift}, {"pass", d.pass}});
  return {{"geometry", geometry}, {"l", l}, {"seed", seed}, {"cells", cj}, {"drifts", dj}, {"pass", pass}};
}

std::string IsomorphismReport::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "geometry,l,s,phi,resolution,lower_ratio,upper_ratio,condition,trials,pass\n";
  for (const auto& c : cells) {
    os << geometry << ',' << l << ',' << c.s << ",\"" << c.phi << "\"," << c.resolution << ',' << c.lower << ','
       << c.upper << ',' << c.condition << ',' << c.trials << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

IsomorphismReport estimate_isomorphism(const BenchCase& bench) {
  bench.validate();
  IsomorphismReport rep;
  rep.geometry = geometry_name(bench.problem.geometry);
  rep.l = bench.problem.l();
  rep.seed = bench.seed;
  rep.pass = true;
  // condition[(s, phi)][resolution index]
  std::vector<std::vector<double>> conditions(bench.s_grid.size() * bench.phis.size());
  for (int res : bench.resolutions) {
    const CylinderGrid grid = CylinderGrid::make(bench.problem.geometry, res, bench.ny, bench.problem.tau);
    const DiscreteOperator op(bench.problem, grid);
    const CylinderNorms norms(grid);
    std::vector<Eigen::VectorXcd> us;
    std::vector<ProblemData> data;
    for (int t = 0; t < bench.trials; ++t) {
      us.push_back(trial_function(grid, bench.seed, t));
      data.push_back(apply_lambda(op, us.back()));
    }
    std::size_t cell = 0;
    for (double s : bench.s_grid) {
      for (const auto& phi : bench.phis) {
        IsomorphismCell c;
        c.s = s;
        c.phi = phi.label();
        c.resolution = res;
        c.trials = bench.trials;
        c.lower = std::numeric_limits<double>::infinity();
        for (int t = 0; t < bench.trials; ++t) {
          const double ratio = target_norm(op, norms, data[t], s, phi) / norms.omega(us[t], s, phi);
          c.lower = std::min(c.lower, ratio);
          c.upper = std::max(c.upper, ratio);
        }
        c.condition = c.upper / c.lower;
        c.pass = std::isfinite(c.condition) && c.lower > 0.0;
        rep.pass = rep.pass && c.pass;
        conditions[cell++].push_back(c.condition);
        rep.cells.push_back(c);
      }
    }
  }
  std::size_t cell = 0;
  for (double s : bench.s_grid) {
    for (const auto& phi : bench.phis) {
      const auto& c = conditions[cell++];
      const double a = c[c.size() - 1], b = c[c.size() - 2];
      IsomorphismDrift d{s, phi.label(), std::max(a / b, b / a), false};
      d.pass = d.drift < 2.0;
      rep.pass = rep.pass && d.pass;
      rep.drifts.push_back(d);
    }
  }
  return rep;
}

nlohmann::json RoundTripReport::to_json() const {
  return {{"resolution", resolution}, {"trials", trials}, {"max_relative_error", max_relative_error}, {"pass", pass}};
}

RoundTripReport heat_round_trip(int resolution, double s, const FunctionParam& phi, int trials, std::uint64_t seed) {
  const ParabolicProblem problem = ParabolicProblem::heat(Geometry::Interval);
  const CylinderGrid grid = CylinderGrid::make(Geometry::Interval, resolution);
  const DiscreteOperator op(problem, grid);
  const CylinderNorms norms(grid);
  RoundTripReport rep;
  rep.resolution = resolution;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const ProblemData data = apply_lambda(op, trial_function(grid, seed, t));
    const ProblemData back = apply_lambda(op, solve_heat(op, data));
    const double err = target_norm(op, norms, back - data, s, phi) / target_norm(op, norms, data, s, phi);
    rep.max_relative_error = std::max(rep.max_relative_error, err);
  }
  rep.pass = rep.max_relative_error <= 1e-6;
  return rep;
}

nlohmann::json JumpStudyReport::to_json() const {
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& v : levels) {
    lv.push_back({{"resolution", v.resolution}, {"conditions", v.conditions}, {"dimension", v.dimension},
                  {"min_ratio", v.min_ratio}, {"max_ratio", v.max_ratio}, {"envelope", v.envelope},
                  {"violating_norm", std::isfinite(v.violating_norm) ? nlohmann::json(v.violating_norm)
                                                                      : nlohmann::json("inf")}});
  }
  return {{"l", l}, {"s_star", s_star}, {"epsilons", epsilons}, {"levels", lv}, {"drift", drift}, {"pass", pass}};
}

JumpStudyReport jump_study(const ParabolicProblem& problem, const JumpStudyOptions& opt) {
  if (problem.geometry != Geometry::Interval) throw InvalidArgument("the jump study runs on the interval geometry");
  const int l = problem.l();
  if (!in_E(opt.s_star, l)) throw InvalidArgument("s* is not a jump point");
  if (opt.epsilons.size() != 2) throw InvalidArgument("the jump study compares two epsilons");
  for (double e : opt.epsilons) {
    if (!(e > 0.0 && e < 0.5)) throw InvalidArgument("epsilon must lie in (0, 1/2)");
  }
  JumpStudyReport rep;
  rep.l = l;
  rep.s_star = opt.s_star;
  rep.epsilons = opt.epsilons;
  const InterpParam half = InterpParam::power(0.5);
  const FunctionParam one;
  for (int res : opt.resolutions) {
    const CylinderGrid grid = CylinderGrid::make(Geometry::Interval, res, 1, problem.tau);
    const DiscreteOperator op(problem, grid);
    const CylinderNorms norms(grid);
    JumpStudyLevel level;
    level.resolution = res;
    std::vector<SubspaceInterpolation> spaces;
    for (double e : opt.epsilons) {
      const int r = compat_count(opt.s_star + e, l);
      level.conditions = r;
      const Eigen::MatrixXcd p = compatibility_projector_matrix(op, r);
      DenseHilbertPair pair{block_gram(norms, opt.s_star - e, l, one), block_gram(norms, opt.s_star + e, l, one)};
      spaces.emplace_back(pair, half, p, 1e-10);
    }
    level.dimension = spaces.front().dimension();
    level.min_ratio = std::numeric_limits<double>::infinity();
    for (int t = 0; t < opt.trials; ++t) {
      const Eigen::VectorXcd d = apply_lambda(op, trial_function(grid, opt.seed, t)).stacked();
      const double ratio = spaces[0].norm(d) / spaces[1].norm(d);
      level.min_ratio = std::min(level.min_ratio, ratio);
      level.max_ratio = std::max(level.max_ratio, ratio);
    }
    level.envelope = std::max(level.max_ratio, 1.0 / level.min_ratio);
    ProblemData bad = apply_lambda(op, trial_function(grid, opt.seed, 0));
    // g + t breaks the condition on d_t g |Gamma that appears at s* and keeps g |Gamma.
    for (int side = 0; side < 2; ++side)
      for (int it = 0; it < grid.nt; ++it) bad.g(side * grid.nt + it) += grid.t(it);
    level.violating_norm = spaces[0].norm(bad.stacked());
    rep.levels.push_back(level);
  }
  const double a = rep.levels[rep.levels.size() - 1].envelope, b = rep.levels[rep.levels.size() - 2].envelope;
  rep.drift = std::max(a / b, b / a);
  rep.pass = std::isfinite(rep.drift) && rep.drift < 2.0;
  return rep;
}

}  // namespace hoermander
