#pragma once

// Interpolation with a function parameter between multiplier-weighted spaces.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "hoermander/params.hpp"
#include "hoermander/spectra.hpp"

namespace hoermander {

struct AdmissiblePair {
  RegularityIndex x0, x1;
  Lattice lattice;
};

/// j(xi) = mu1(xi) / mu0(xi); ||J u||_{X0} = ||u||_{X1}.
class GeneratingMultiplier {
 public:
  explicit GeneratingMultiplier(const AdmissiblePair& pair);

  const Eigen::ArrayXd& mu0() const { return mu0_; }
  const Eigen::ArrayXd& mu1() const { return mu1_; }
  const Eigen::ArrayXd& values() const { return j_; }

 private:
  Eigen::ArrayXd mu0_, mu1_, j_;
};

/// (sum mu0^2 psi(mu1/mu0)^2 |c|^2)^{1/2}.
double interpolated_norm(const Eigen::ArrayXd& mu0, const Eigen::ArrayXd& mu1, const InterpParam& psi,
                         const Eigen::VectorXcd& coeffs);
double interpolated_norm(const AdmissiblePair& pair, const InterpParam& psi, const SpectralField& u);

struct InterpEmbedding {
  double x1_to_psi = 0.0;  // ||u||_psi <= c ||u||_{X1}
  double psi_to_x0 = 0.0;  // ||u||_{X0} <= c ||u||_psi
};
InterpEmbedding interpolation_embeddings(const AdmissiblePair& pair, const InterpParam& psi);

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 20240601;
  double tolerance = 1e-10;
};

struct VerificationReport {
  std::string check;
  nlohmann::json parameters;
  int trials = 0;
  double max_deviation = 0.0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

/// Complex Gaussian coefficients, deterministic in (seed, trial).
Eigen::VectorXcd random_coefficients(Eigen::Index n, std::uint64_t seed, int trial);

/// Interpolated norm between H^{s0-lambda} and H^{s1-lambda} (phi == 1) with
/// psi from build_psi against the direct H^{s-lambda;phi} norm.
VerificationReport verify_interp_aniso(double s0, double s, double s1, double lambda,
                                     const FunctionParam& phi, const Lattice& lattice,
                                     const VerifyOptions& options = {});
VerificationReport verify_interp_iso(double s0, double s, double s1, const FunctionParam& phi,
                                   const Lattice& lattice, const VerifyOptions& options = {});

/// Interpolated norm of a block field against the l2 combination of blocks.
VerificationReport verify_orthogonal_sum(const std::vector<AdmissiblePair>& pairs, const InterpParam& psi,
                                         const VerifyOptions& options = {});

/// [X_alpha, X_beta]_psi against X_omega with omega = reiterate(alpha, beta, psi).
VerificationReport verify_reiteration(const InterpParam& alpha, const InterpParam& beta,
                                      const InterpParam& psi, const AdmissiblePair& pair,
                                      const VerifyOptions& options = {});

/// A Hilbert pair on C^n given by Gram matrices (x^* G x is the squared norm).
struct DenseHilbertPair {
  Eigen::MatrixXcd gram0, gram1;
};

DenseHilbertPair diagonal_pair(const AdmissiblePair& pair);

/// Norm of u in [Y0, Y1]_psi, where Y = range(P) carries the restrictions of
/// the two norms. Returns +inf when u is not in range(P). Throws
/// ProjectorMismatch if P^2 != P.
double interpolate_subspace_norm(const DenseHilbertPair& pair, const InterpParam& psi,
                                 const Eigen::MatrixXcd& projector, const Eigen::VectorXcd& u,
                                 double tol = 1e-10);
double interpolate_subspace_norm(const AdmissiblePair& pair, const InterpParam& psi,
                                 const Eigen::MatrixXcd& projector, const SpectralField& u,
                                 double tol = 1e-10);

/// Reusable form of the above for many u with one (pair, psi, P).
class SubspaceInterpolation {
 public:
  SubspaceInterpolation(const DenseHilbertPair& pair, const InterpParam& psi,
                        const Eigen::MatrixXcd& projector, double tol = 1e-10);

  double norm(const Eigen::VectorXcd& u) const;
  Eigen::Index dimension() const { return basis_.cols(); }

 private:
  Eigen::MatrixXcd projector_;
  Eigen::MatrixXcd basis_;      // orthonormal columns spanning range(P)
  Eigen::MatrixXcd analysis_;   // coordinates in the gram0-orthonormal eigenbasis
  Eigen::VectorXd weights_;     // psi(lambda_i)
  double tol_;
};

}  // namespace hoermander
