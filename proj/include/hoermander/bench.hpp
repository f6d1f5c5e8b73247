#pragma once

// Empirical two-sided bounds for the problem operator Lambda_l on model
// cylinders, the half-interpolation study at jump points, and the round
// trip through the interval heat solver.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "hoermander/parabolic.hpp"
#include "hoermander/params.hpp"

namespace hoermander {

struct BenchCase {
  ParabolicProblem problem;
  std::vector<double> s_grid;
  std::vector<FunctionParam> phis;
  int trials = 30;
  std::vector<int> resolutions{16, 32};  // periodic box sizes
  std::uint64_t seed = 20240601;
  int ny = 4;
  bool jump_study = false;

  /// Throws InvalidArgument: trials >= 30, s > 2, s not in E_l unless jump_study.
  void validate() const;
};

BenchCase bench_case_from_json(const nlohmann::json& j);

/// u = sum c_ab P_a(2x - 1) P_b(2t/tau - 1) e^{i m y}, a <= 4, b <= 3,
/// |m| <= 1 on the strip, complex Gaussian c, deterministic in (seed, trial).
Eigen::VectorXcd trial_function(const CylinderGrid& grid, std::uint64_t seed, int trial);

struct IsomorphismCell {
  double s = 0.0;
  std::string phi;
  int resolution = 0;
  double lower = 0.0;      // min ||Lambda u|| / ||u||
  double upper = 0.0;      // max ||Lambda u|| / ||u||
  double condition = 0.0;  // upper / lower
  int trials = 0;
  bool pass = false;       // finite and lower > 0
};

struct IsomorphismDrift {
  double s = 0.0;
  std::string phi;
  double drift = 0.0;  // condition ratio between the two finest resolutions (>= 1)
  bool pass = false;   // drift < 2
};

struct IsomorphismReport {
  std::string geometry;
  int l = 0;
  std::uint64_t seed = 0;
  std::vector<IsomorphismCell> cells;
  std::vector<IsomorphismDrift> drifts;
  bool pass = false;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

IsomorphismReport estimate_isomorphism(const BenchCase& bench);

struct RoundTripReport {
  int resolution = 0;
  int trials = 0;
  double max_relative_error = 0.0;  // ||Lambda(solve(d)) - d|| / ||d|| in the target norm
  bool pass = false;                // <= 1e-6

  nlohmann::json to_json() const;
};

/// Interval heat problem with Dirichlet data from Lambda-synthesized trials.
RoundTripReport heat_round_trip(int resolution, double s, const FunctionParam& phi, int trials,
                                std::uint64_t seed);

struct JumpStudyOptions {
  double s_star = 3.5;
  std::vector<double> epsilons{0.1, 0.2};
  std::vector<int> resolutions{16, 32};
  int trials = 30;
  std::uint64_t seed = 20240601;
};

struct JumpStudyLevel {
  int resolution = 0;
  int conditions = 0;          // r of the projector
  Eigen::Index dimension = 0;  // dim range(P)
  double min_ratio = 0.0;      // norm_eps1 / norm_eps2 over trials
  double max_ratio = 0.0;
  double envelope = 0.0;       // C with ratios in [1/C, C]
  double violating_norm = 0.0; // norm of data breaking the condition at s*
};

struct JumpStudyReport {
  int l = 0;
  double s_star = 0.0;
  std::vector<double> epsilons;
  std::vector<JumpStudyLevel> levels;
  double drift = 0.0;  // envelope ratio between the two finest resolutions
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Half-interpolated norms [Q^{s*-eps}, Q^{s*+eps}]_{1/2} with the compatibility
/// projector on the interval geometry; data that violate the condition
/// appearing at s* lie outside range(P) and get norm +inf.
JumpStudyReport jump_study(const ParabolicProblem& problem, const JumpStudyOptions& options);

}  // namespace hoermander
