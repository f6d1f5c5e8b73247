#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hoermander/bench.hpp"
#include "hoermander/cylinder_norms.hpp"
#include "hoermander/errors.hpp"

namespace hoermander {
namespace {

using testing::Gen;

BenchCase interval_case() {
  BenchCase b;
  b.problem = ParabolicProblem::heat(Geometry::Interval);
  b.s_grid = {3.0};
  b.phis = {FunctionParam(), FunctionParam::log_power({1.0})};
  b.trials = 30;
  b.resolutions = {16, 32};
  b.seed = 5;
  return b;
}

TEST(TrialFunction, DeterministicAndSeedDependent) {
  const CylinderGrid g = CylinderGrid::make(Geometry::PeriodicStrip, 16);
  EXPECT_EQ(trial_function(g, 1, 3), trial_function(g, 1, 3));
  EXPECT_GT((trial_function(g, 1, 3) - trial_function(g, 1, 4)).norm(), 1.0);
  EXPECT_GT((trial_function(g, 2, 3) - trial_function(g, 1, 3)).norm(), 1.0);
  EXPECT_EQ(trial_function(g, 1, 0).size(), g.omega().size());
}

// Trials are polynomials of degree <= 4 in x and <= 3 in t, which the stencils
// differentiate exactly, so the heat residual vanishes for u_t = u_xx pairs.
TEST(TrialFunction, StencilsAreExactOnTrials) {
  const CylinderGrid g = CylinderGrid::make(Geometry::Interval, 16);
  const DiscreteOperator op(ParabolicProblem::heat(Geometry::Interval), g);
  Eigen::VectorXcd u(g.omega().size()), want(g.omega().size());
  for (int ix = 0; ix < g.nx; ++ix)
    for (int it = 0; it < g.nt; ++it) {
      const double x = g.x(ix), t = g.t(it);
      // u = x^4 + 12 x^2 t + 12 t^2: u_t - u_xx = 12 x^2 + 24 t - 12 x^2 - 24 t = 0.
      u(g.omega().index(ix, 0, it)) = std::pow(x, 4) + 12.0 * x * x * t + 12.0 * t * t;
    }
  EXPECT_LT(apply_lambda(op, u).f.norm(), 1e-9 * u.norm());
}

TEST(CylinderNorms, HomogeneousAndMonotoneInS) {
  Gen gen(81);
  const CylinderGrid g = CylinderGrid::make(Geometry::PeriodicStrip, 16);
  const CylinderNorms norms(g);
  const FunctionParam phi = FunctionParam::log_power({1.0});
  for (int c = 0; c < 5; ++c) {
    const Eigen::VectorXcd u = trial_function(g, 81, c);
    const double a = norms.omega(u, 2.5, phi);
    EXPECT_LT(testing::relative_gap(norms.omega(5.0 * u, 2.5, phi), 5.0 * a), 1e-12);
    EXPECT_LE(norms.omega(u, 1.5, phi), a * (1.0 + 1e-12));
    EXPECT_LE(a, norms.omega(u, 3.5, phi) * (1.0 + 1e-12));
    const Eigen::VectorXcd h = gen.complex_vector(g.base().size());
    EXPECT_LT(testing::relative_gap(norms.base(2.0 * h, 1.0, phi), 2.0 * norms.base(h, 1.0, phi)), 1e-12);
  }
}

TEST(CylinderNorms, ZeroAndSizeErrors) {
  const CylinderGrid g = CylinderGrid::make(Geometry::Interval, 16);
  const CylinderNorms norms(g);
  EXPECT_EQ(norms.omega(Eigen::VectorXcd::Zero(g.omega().size()), 3.0, FunctionParam()), 0.0);
  EXPECT_THROW(norms.omega(Eigen::VectorXcd::Zero(3), 3.0, FunctionParam()), DimensionMismatch);
}

// The Lambda ratio ||Lambda u|| / ||u|| is invariant under u -> 5u.
TEST(Isomorphism, RatioIsHomogeneous) {
  const CylinderGrid g = CylinderGrid::make(Geometry::PeriodicStrip, 16);
  const DiscreteOperator op(ParabolicProblem::heat(Geometry::PeriodicStrip), g);
  const CylinderNorms norms(g);
  const FunctionParam phi;
  for (int c = 0; c < 3; ++c) {
    const Eigen::VectorXcd u = trial_function(g, 82, c);
    const double r1 = target_norm(op, norms, apply_lambda(op, u), 3.0, phi) / norms.omega(u, 3.0, phi);
    const Eigen::VectorXcd u5 = 5.0 * u;
    const double r5 = target_norm(op, norms, apply_lambda(op, u5), 3.0, phi) / norms.omega(u5, 3.0, phi);
    EXPECT_LT(testing::relative_gap(r5, r1), 1e-12);
  }
}

TEST(Isomorphism, IntervalCaseIsStable) {
  const IsomorphismReport rep = estimate_isomorphism(interval_case());
  ASSERT_EQ(rep.cells.size(), 4u);
  ASSERT_EQ(rep.drifts.size(), 2u);
  for (const auto& c : rep.cells) {
    EXPECT_TRUE(c.pass);
    EXPECT_GT(c.lower, 0.0);
    EXPECT_GE(c.condition, 1.0);
    EXPECT_EQ(c.trials, 30);
  }
  for (const auto& d : rep.drifts) EXPECT_LT(d.drift, 2.0) << d.phi;
  EXPECT_TRUE(rep.pass);

  const nlohmann::json j = rep.to_json();
  EXPECT_EQ(j.at("geometry"), "Interval");
  EXPECT_EQ(j.at("cells").size(), 4u);
  const std::string csv = rep.to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(csv.rfind("geometry,l,s,phi,resolution", 0), 0u);
}

TEST(Isomorphism, SameSeedSameReport) {
  BenchCase b = interval_case();
  b.phis = {FunctionParam()};
  EXPECT_EQ(estimate_isomorphism(b).to_json(), estimate_isomorphism(b).to_json());
}

TEST(BenchCase, Validation) {
  BenchCase b = interval_case();
  EXPECT_NO_THROW(b.validate());
  b.trials = 29;
  EXPECT_THROW(b.validate(), InvalidArgument);
  b = interval_case();
  b.s_grid = {2.0};
  EXPECT_THROW(b.validate(), InvalidArgument);
  b.s_grid = {3.5};
  EXPECT_THROW(b.validate(), InvalidArgument);
  b.jump_study = true;
  EXPECT_NO_THROW(b.validate());
  b = interval_case();
  b.resolutions = {16};
  EXPECT_THROW(b.validate(), InvalidArgument);
  b = interval_case();
  b.phis.clear();
  EXPECT_THROW(b.validate(), InvalidArgument);
}

TEST(BenchCase, FromJson) {
  const nlohmann::json j = {{"problem", to_json(ParabolicProblem::heat(Geometry::PeriodicStrip))},
                            {"s_grid", {3.0, 4.0}},
                            {"phi", {to_json(FunctionParam::log_power({-1.0}))}},
                            {"resolutions", {16, 32}},
                            {"seed", 9}};
  const BenchCase b = bench_case_from_json(j);
  EXPECT_EQ(b.problem.geometry, Geometry::PeriodicStrip);
  EXPECT_EQ(b.s_grid.size(), 2u);
  EXPECT_EQ(b.phis.front().label(), FunctionParam::log_power({-1.0}).label());
  EXPECT_EQ(b.trials, 30);
  EXPECT_EQ(b.seed, 9u);
  nlohmann::json bad = j;
  bad["trials"] = 10;
  EXPECT_THROW(bench_case_from_json(bad), InvalidArgument);
  bad = j;
  bad.erase("s_grid");
  EXPECT_ANY_THROW(bench_case_from_json(bad));
}

TEST(HeatRoundTrip, RecoversData) {
  const RoundTripReport rep = heat_round_trip(16, 3.0, FunctionParam(), 30, 83);
  EXPECT_EQ(rep.trials, 30);
  EXPECT_LT(rep.max_relative_error, 1e-6);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.to_json().at("resolution"), 16);
}

TEST(JumpStudy, RatiosStableAndViolatingDataInfinite) {
  JumpStudyOptions opt;
  opt.trials = 30;
  opt.seed = 84;
  const JumpStudyReport rep = jump_study(ParabolicProblem::heat(Geometry::Interval), opt);
  EXPECT_EQ(rep.l, 0);
  EXPECT_EQ(rep.s_star, 3.5);
  ASSERT_EQ(rep.levels.size(), 2u);
  for (const auto& level : rep.levels) {
    EXPECT_EQ(level.conditions, 2);
    EXPECT_GT(level.dimension, 0);
    EXPECT_GT(level.min_ratio, 0.0);
    EXPECT_TRUE(std::isfinite(level.envelope));
    EXPECT_TRUE(std::isinf(level.violating_norm));
  }
  EXPECT_LT(rep.drift, 2.0);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.to_json().at("levels").size(), 2u);
}

TEST(JumpStudy, RejectsPointsOutsideJumpSet) {
  JumpStudyOptions opt;
  opt.s_star = 3.0;
  EXPECT_THROW(jump_study(ParabolicProblem::heat(Geometry::Interval), opt), InvalidArgument);
}

}  // namespace
}  // namespace hoermander
