// Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "condition_corpus.hpp"
#include "generators.hpp"
#include "hoermander/bench.hpp"
#include "hoermander/errors.hpp"
#include "hoermander/interp.hpp"
#include "hoermander/parabolic.hpp"
#include "hoermander/spectra.hpp"
#include "hoermander/traces.hpp"
#include "oracles.hpp"

namespace {

using namespace hoermander;
using Clock = std::chrono::steady_clock;

const double kTwoPi = 2.0 * M_PI;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Tuple {
  double s0, s, s1, lambda;
  FunctionParam phi;
};

std::vector<Tuple> interpolation_tuples() {
  return {{0.0, 1.0, 2.0, 0.0, FunctionParam()},
          {0.0, 1.0, 2.0, 0.0, FunctionParam::log_power({1.0})},
          {0.0, 1.0, 2.0, 0.0, FunctionParam::log_power({-1.0})},
          {-1.0, 0.5, 2.0, 0.5, FunctionParam::log_power({1.0})},
          {1.0, 2.5, 4.0, 1.0, FunctionParam::log_power({1.0, -1.0})},
          {0.5, 1.2, 3.0, 0.25, FunctionParam::log_power({-1.0})}};
}

std::vector<Lattice> interpolation_lattices() {
  return {Lattice({32, 32}, {kTwoPi, 2.0}), Lattice({64, 64}, {kTwoPi, 2.0}),
          Lattice({32, 32, 32}, {kTwoPi, kTwoPi, 2.0})};
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome interpolation_equality() {
  const auto start = Clock::now();
  double worst = 0.0;
  bool pass = true;
  for (const Lattice& l : interpolation_lattices()) {
    for (const Tuple& t : interpolation_tuples()) {
      const auto rep = verify_interp_aniso(t.s0, t.s, t.s1, t.lambda, t.phi, l, {100, 20240601, 1e-10});
      worst = std::max(worst, rep.max_deviation);
      pass = pass && rep.pass;
    }
  }
  const double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, "18 cases x 100 fields, max deviation %.2e, %.1f s", worst, elapsed);
  return {pass && worst <= 1e-10 && elapsed < 30.0, buf};
}

Outcome reiteration() {
  double worst = 0.0;
  bool pass = true;
  int cases = 0;
  for (const Lattice& l : interpolation_lattices()) {
    const int k = l.dims();
    for (const Tuple& t : interpolation_tuples()) {
      const AdmissiblePair pair{RegularityIndex::parabolic(t.s0, FunctionParam(), k),
                                RegularityIndex::parabolic(t.s1, t.phi, k), l};
      const double eps = 0.25, delta = 0.5;
      const std::vector<std::array<InterpParam, 3>> triples = {
          {InterpParam([](double) { return 1.0; }, "one"), InterpParam::power(1.0), InterpParam::power(0.3)},
          {half_reduction_alpha(eps, delta, t.phi), half_reduction_beta(eps, delta, t.phi), InterpParam::power(0.5)},
          {build_psi(0.0, 0.2, 1.0, t.phi), build_psi(0.0, 0.8, 1.0, FunctionParam()),
           build_psi(0.0, 0.5, 1.0, FunctionParam::log_power({1.0}))}};
      for (const auto& [alpha, beta, psi] : triples) {
        const auto rep = verify_reiteration(alpha, beta, psi, pair, {100, 20240601, 1e-12});
        worst = std::max(worst, rep.max_deviation);
        pass = pass && rep.pass;
        ++cases;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d cases including the half-reduction triple, max deviation %.2e", cases, worst);
  return {pass && worst <= 1e-12, buf};
}

Outcome orthogonal_sums() {
  double worst = 0.0;
  bool pass = true;
  for (const Tuple& t : interpolation_tuples()) {
    std::vector<AdmissiblePair> pairs;
    for (const Lattice& l : interpolation_lattices()) {
      pairs.push_back({RegularityIndex::parabolic(t.s0 - t.lambda, FunctionParam(), l.dims()),
                       RegularityIndex::parabolic(t.s1 - t.lambda, FunctionParam(), l.dims()), l});
    }
    const auto rep = verify_orthogonal_sum(pairs, build_psi(t.s0, t.s, t.s1, t.phi), {100, 20240601, 1e-12});
    worst = std::max(worst, rep.max_deviation);
    pass = pass && rep.pass;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "6 three-block sums x 100 fields, max deviation %.2e", worst);
  return {pass && worst <= 1e-12, buf};
}

double max_component_error(const CauchyData& got, const CauchyData& want) {
  double worst = 0.0;
  for (int k = 0; k < want.r(); ++k) {
    worst = std::max(worst, (got.components[k] - want.components[k]).norm() / want.components[k].norm());
  }
  return worst;
}

Outcome trace_identity() {
  // Period 64 keeps <xi>^2 <= 1 + pi^2, so the centred stencil stays in the flat region.
  const Lattice spatial({64}, {64.0});
  const Lattice space_time({64, 512}, {64.0, 4.0});
  const Lattice plane({64, 64}, {kTwoPi, kTwoPi});
  double stencil = 0.0, jets = 0.0;
  for (int r = 1; r <= 3; ++r) {
    for (int trial = 0; trial < 100; ++trial) {
      const CauchyData v = CauchyData::random(spatial, r, 4, 100 * r + trial);
      stencil = std::max(stencil, max_component_error(trace_R(lift_T(v, CutoffProfile(), space_time), r), v));
      const CauchyData w = CauchyData::random(plane, r, 5, 100 * r + trial);
      jets = std::max(jets, max_component_error(lift_jet_trace(w, CutoffProfile()), w));
    }
  }
  double beta_gap = 0.0;
  for (int k = 0; k <= 3; ++k) {
    for (int m = 0; m <= 3; ++m) {
      const BetaConstants got = beta_constants(CutoffProfile(), k, m);
      const auto want = testing::beta_constants_oracle(1.0, k, m, 2000);
      beta_gap = std::max({beta_gap, testing::relative_gap(got.c1, want.c1), testing::relative_gap(got.c2, want.c2)});
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "R T = id: stencil %.2e, jets %.2e (r = 1..3, 100 each); beta constants vs oracle %.2e", stencil,
                jets, beta_gap);
  return {stencil <= 1e-9 && jets <= 1e-9 && beta_gap <= 1e-8, buf};
}

double symbolic_recurrence_error() {
  ParabolicProblem p = ParabolicProblem::heat(Geometry::PeriodicStrip);
  p.terms = {{{2, 0}, Expr::parse("1+t/2")}, {{0, 2}, Expr::parse("2-t")}, {{0, 0}, Expr::parse("t^2")}};
  const CylinderGrid g = CylinderGrid::make(Geometry::PeriodicStrip, 16);
  const DiscreteOperator op(p, g);
  // u = P(x) cos(y) T(t); v_k = P cos(y) T^(k)(0).
  auto P = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  auto P2 = [](double x) { return 6.0 * x; };
  auto T = [](double t) { return 1.0 + 2.0 * t - t * t + 0.5 * t * t * t; };
  auto T1 = [](double t) { return 2.0 - 2.0 * t + 1.5 * t * t; };
  const double tk[4] = {1.0, 2.0, -2.0, 3.0};
  Eigen::VectorXcd f(g.omega().size()), h(g.base().size());
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const double x = g.x(ix), y = g.y(iy);
      for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        f(g.omega().index(ix, iy, it)) =
            std::cos(y) * (P(x) * T1(t) - (1.0 + t / 2.0) * P2(x) * T(t) + (2.0 - t) * P(x) * T(t) + t * t * P(x) * T(t));
      }
      h(g.base().index(ix, iy, 0)) = P(x) * std::cos(y);
    }
  const auto v = op.compute_v(f, h, 3);
  double worst = 0.0;
  for (int k = 0; k <= 3; ++k) {
    double err = 0.0, scale = 0.0;
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy) {
        const double want = P(g.x(ix)) * std::cos(g.y(iy)) * tk[k];
        err = std::max(err, std::abs(v[k](g.base().index(ix, iy, 0)) - want));
        scale = std::max(scale, std::abs(want));
      }
    worst = std::max(worst, err / scale);
  }
  return worst;
}

Outcome compatibility_machinery() {
  bool counts = compat_count(2.01, 0) == 1 && compat_count(3.0, 0) == 1 && compat_count(3.5, 0) == 1 &&
                compat_count(3.51, 0) == 2 && compat_count(5.5, 0) == 2 && compat_count(5.51, 0) == 3;
  bool membership = true;
  for (int r = 1; r <= 20; ++r) {
    membership = membership && in_E(2.0 * r + 1.5, 0) && in_E(2.0 * r + 0.5, 1) && !in_E(2.0 * r + 0.5, 0) &&
                 !in_E(2.0 * r + 1.5, 1) && !in_E(2.0 * r + 1.5 + 1e-12, 0);
  }
  membership = membership && !in_E(1.5, 0) && !in_E(0.5, 1);

  const double recurrence = symbolic_recurrence_error();

  testing::Gen gen(2024);
  std::vector<DiscreteOperator> ops;
  for (Geometry geo : {Geometry::Interval, Geometry::PeriodicStrip}) {
    for (BoundaryKind b : {BoundaryKind::Dirichlet, BoundaryKind::FirstOrder}) {
      ops.emplace_back(ParabolicProblem::heat(geo, b), CylinderGrid::make(geo, 16));
    }
  }
  int passed = 0;
  double worst_residual = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DiscreteOperator& op = ops[gen.integer(0, 3)];
    const double s = gen.uniform(2.0, 7.5);
    const ProblemData d = apply_lambda(op, trial_function(op.grid(), 77, trial));
    const CompatibilityReport rep = check_compatibility(op, d, s);
    for (double r : rep.residuals) worst_residual = std::max(worst_residual, r);
    passed += rep.pass;
  }
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "worked counts %s, E membership %s, v_k (k <= 3) vs symbolic %.2e, Lambda data %d/1000 PASS "
                "(max residual %.2e)",
                counts ? "ok" : "wrong", membership ? "exact" : "wrong", recurrence, passed, worst_residual);
  return {counts && membership && recurrence <= 1e-8 && passed == 1000, buf};
}

Outcome condition_checks() {
  const auto corpus = testing::condition_corpus();
  int agree = 0;
  std::string misses;
  for (const auto& c : corpus) {
    if (testing::run_check(c) == c.expected) {
      ++agree;
    } else {
      misses += " [" + c.name + "]";
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/%zu hand verdicts reproduced", agree, corpus.size());
  return {agree == static_cast<int>(corpus.size()), buf + misses};
}

Outcome isomorphism() {
  const auto start = Clock::now();
  const std::vector<FunctionParam> phis = {FunctionParam(), FunctionParam::log_power({1.0}),
                                           FunctionParam::log_power({-1.0})};
  bool pass = true;
  double worst_drift = 0.0, worst_condition = 0.0;
  for (Geometry geo : {Geometry::Interval, Geometry::PeriodicStrip}) {
    BenchCase b;
    b.problem = ParabolicProblem::heat(geo);
    b.s_grid = {2.6, 3.0, 4.0, 4.6};
    b.phis = phis;
    b.trials = 30;
    b.resolutions = {16, 32};
    const IsomorphismReport rep = estimate_isomorphism(b);
    pass = pass && rep.pass;
    for (const auto& d : rep.drifts) worst_drift = std::max(worst_drift, d.drift);
    for (const auto& c : rep.cells) worst_condition = std::max(worst_condition, c.condition);
  }
  double round_trip = 0.0;
  for (const auto& phi : phis) {
    const RoundTripReport rt = heat_round_trip(32, 3.0, phi, 30, 20240601);
    round_trip = std::max(round_trip, rt.max_relative_error);
    pass = pass && rt.pass;
  }
  const double elapsed = seconds_since(start);
  char buf[200];
  std::snprintf(buf, sizeof buf, "max condition %.3f, max drift %.3f, round trip %.2e, %.0f s", worst_condition,
                worst_drift, round_trip, elapsed);
  return {pass && worst_drift < 2.0 && round_trip <= 1e-6 && elapsed < 600.0, buf};
}

Outcome jump() {
  const JumpStudyReport rep = jump_study(ParabolicProblem::heat(Geometry::Interval), JumpStudyOptions{});
  std::string envelopes;
  bool violating_inf = true;
  for (const auto& level : rep.levels) {
    char buf[80];
    std::snprintf(buf, sizeof buf, " C(%d) = %.4f", level.resolution, level.envelope);
    envelopes += buf;
    violating_inf = violating_inf && std::isinf(level.violating_norm);
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "s* = 3.5, eps 0.1 vs 0.2:%s, drift %.3f, violating data %s", envelopes.c_str(),
                rep.drift, violating_inf ? "inf" : "finite");
  return {rep.pass && rep.drift < 2.0, buf};
}

Outcome quotient_oracle() {
  testing::Gen gen(909);
  double worst = 0.0;
  int failures = 0;
  for (int c = 0; c < 50; ++c) {
    const int shape = gen.integer(0, 2);
    const Lattice l = shape == 0 ? Lattice({16, 16}, {kTwoPi, 4.0})
                      : shape == 1 ? Lattice({8, 32}, {3.0, kTwoPi})
                                   : Lattice({64}, {5.0});
    const double s = gen.uniform(-1.0, 1.5);
    const FunctionParam phi = gen.slow_param();
    const auto idx = (l.dims() == 2 && gen.coin()) ? RegularityIndex::parabolic(s, phi, 2)
                                                   : RegularityIndex::isotropic(s, phi, l.dims());
    const auto sel = gen.mask(l.point_count(), gen.uniform(0.3, 0.8));
    const SubdomainMask mask(l, sel);
    const Eigen::VectorXcd u = gen.complex_vector(static_cast<Eigen::Index>(mask.inside().size()));
    try {
      const QuotientResult cg = quotient_norm_cg(idx, u, mask, {1e-12, 0});
      worst = std::max(worst, testing::relative_gap(cg.norm, testing::dense_quotient(idx, l, sel, u)));
    } catch (const NoConvergence&) {
      ++failures;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "50 masks on <= 256-point lattices, max relative gap %.2e, %d not converged", worst,
                failures);
  return {failures == 0 && worst <= 1e-8, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
      {"interpolation equality", interpolation_equality},
      {"reiteration", reiteration},
      {"orthogonal sums", orthogonal_sums},
      {"trace identity and beta constants", trace_identity},
      {"compatibility machinery", compatibility_machinery},
      {"Petrovskii and covering checks", condition_checks},
      {"isomorphism surrogate", isomorphism},
      {"jump study", jump},
      {"quotient norm oracle", quotient_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
