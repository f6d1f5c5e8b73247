#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

#include "hoermander/params.hpp"

namespace hoermander {

enum class Anisotropy { Isotropic, ParabolicSplit };

/// Regularity index mu_{s,phi} on R^k. For ParabolicSplit the last axis is
/// time: mu = rho^{s/2} phi(rho^{1/2}) with rho = 1 + |xi'|^2 + |xi_k|.
/// Isotropic: rho = 1 + |xi|^2.
struct RegularityIndex {
  double s = 0.0;
  FunctionParam phi;
  Anisotropy anisotropy = Anisotropy::Isotropic;
  int k = 1;

  static RegularityIndex isotropic(double s, FunctionParam phi, int k);
  static RegularityIndex parabolic(double s, FunctionParam phi, int k);

  int spatial_dims() const { return anisotropy == Anisotropy::ParabolicSplit ? k - 1 : k; }
  void validate() const;
};

/// rho^{s/2} phi(rho^{1/2}).
template <typename Scalar>
Scalar weight_of_rho(double s, const FunctionParam& phi, Scalar rho) {
  using std::pow;
  using std::sqrt;
  return pow(rho, Scalar(s) / Scalar(2)) * Scalar(phi(static_cast<double>(sqrt(rho))));
}

template <typename Scalar, typename Derived>
Scalar rho_of(const RegularityIndex& idx, const Eigen::MatrixBase<Derived>& xi) {
  using std::abs;
  Scalar rho(1);
  const Eigen::Index n = xi.size();
  if (idx.anisotropy == Anisotropy::ParabolicSplit) {
    for (Eigen::Index j = 0; j + 1 < n; ++j) rho += Scalar(xi(j)) * Scalar(xi(j));
    rho += abs(Scalar(xi(n - 1)));
  } else {
    for (Eigen::Index j = 0; j < n; ++j) rho += Scalar(xi(j)) * Scalar(xi(j));
  }
  return rho;
}

/// mu(xi) for a frequency vector of length idx.k.
template <typename Scalar = double, typename Derived>
Scalar eval_weight(const RegularityIndex& idx, const Eigen::MatrixBase<Derived>& xi) {
  return weight_of_rho<Scalar>(idx.s, idx.phi, rho_of<Scalar>(idx, xi));
}

struct AdmissibilityFit {
  double c = 1.0;
  double l = 0.0;
  double max_residual = 0.0;  // max of log(mu(xi)/mu(eta)) - log c - l log(1+|xi-eta|)
  int pairs = 0;
};

/// Empirical fit of mu(xi)/mu(eta) <= c (1+|xi-eta|)^l over random pairs in
/// [-box, box]^k. log c is the largest log-ratio among pairs at distance <= 1
/// (and at least 0); l is then the smallest slope that covers every sample.
AdmissibilityFit check_admissibility(const RegularityIndex& idx, int sample_pairs,
                                     std::uint64_t seed = 7, double box = 64.0);

}  // namespace hoermander
