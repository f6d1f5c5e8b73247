#include "hoermander/weights.hpp"

#include <algorithm>
#include <random>

#include "hoermander/errors.hpp"

namespace hoermander {

RegularityIndex RegularityIndex::isotropic(double s, FunctionParam phi, int k) {
  RegularityIndex idx{s, std::move(phi), Anisotropy::Isotropic, k};
  idx.validate();
  return idx;
}

RegularityIndex RegularityIndex::parabolic(double s, FunctionParam phi, int k) {
  RegularityIndex idx{s, std::move(phi), Anisotropy::ParabolicSplit, k};
  idx.validate();
  return idx;
}

void RegularityIndex::validate() const {
  if (k < 1) throw InvalidArgument("regularity index dimension must be at least 1");
  if (anisotropy == Anisotropy::ParabolicSplit && k < 2) {
    throw InvalidArgument("ParabolicSplit requires k >= 2");
  }
  phi.validate();
}

AdmissibilityFit check_admissibility(const RegularityIndex& idx, int sample_pairs,
                                     std::uint64_t seed, double box) {
  if (sample_pairs < 100) throw InvalidArgument("check_admissibility needs at least 100 pairs");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-box, box);
  std::vector<double> xs(sample_pairs), ys(sample_pairs);
  Eigen::VectorXd xi(idx.k), eta(idx.k);
  for (int p = 0; p < sample_pairs; ++p) {
    for (int j = 0; j < idx.k; ++j) {
      xi(j) = coord(rng);
      eta(j) = coord(rng);
    }
    xs[p] = std::log1p((xi - eta).norm());
    ys[p] = std::log(eval_weight(idx, xi) / eval_weight(idx, eta));
  }
  AdmissibilityFit fit;
  fit.pairs = sample_pairs;
  double log_c = 0.0;
  for (int p = 0; p < sample_pairs; ++p) {
    if (xs[p] <= std::log(2.0)) log_c = std::max(log_c, ys[p]);
  }
  double l = 0.0;
  for (int p = 0; p < sample_pairs; ++p) {
    if (xs[p] > std::log(2.0)) l = std::max(l, (ys[p] - log_c) / xs[p]);
  }
  fit.c = std::exp(log_c);
  fit.l = l;
  fit.max_residual = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < sample_pairs; ++p) {
    fit.max_residual = std::max(fit.max_residual, ys[p] - log_c - l * xs[p]);
  }
  return fit;
}

}  // namespace hoermander
