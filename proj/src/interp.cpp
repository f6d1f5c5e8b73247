#include "hoermander/interp.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace hoermander {

GeneratingMultiplier::GeneratingMultiplier(const AdmissiblePair& pair)
    : mu0_(weight_array(pair.x0, pair.lattice)), mu1_(weight_array(pair.x1, pair.lattice)) {
  j_ = mu1_ / mu0_;
}

double interpolated_norm(const Eigen::ArrayXd& mu0, const Eigen::ArrayXd& mu1, const InterpParam& psi,
                         const Eigen::VectorXcd& coeffs) {
  if (mu0.size() != coeffs.size() || mu1.size() != coeffs.size()) {
    throw DimensionMismatch("weights and coefficients differ in length");
  }
  double sum = 0.0;
  for (Eigen::Index p = 0; p < coeffs.size(); ++p) {
    const double w = mu0(p) * psi(mu1(p) / mu0(p));
    sum += w * w * std::norm(coeffs(p));
  }
  return std::sqrt(sum);
}

double interpolated_norm(const AdmissiblePair& pair, const InterpParam& psi, const SpectralField& u) {
  if (u.lattice != pair.lattice) throw DimensionMismatch("field lattice differs from pair lattice");
  GeneratingMultiplier j(pair);
  return interpolated_norm(j.mu0(), j.mu1(), psi, u.coeffs);
}

InterpEmbedding interpolation_embeddings(const AdmissiblePair& pair, const InterpParam& psi) {
  GeneratingMultiplier j(pair);
  InterpEmbedding e;
  for (Eigen::Index p = 0; p < j.values().size(); ++p) {
    const double ps = psi(j.values()(p));
    e.x1_to_psi = std::max(e.x1_to_psi, ps / j.values()(p));
    e.psi_to_x0 = std::max(e.psi_to_x0, 1.0 / ps);
  }
  return e;
}

nlohmann::json VerificationReport::to_json() const {
  return {{"check", check}, {"parameters", parameters}, {"trials", trials},
          {"max_deviation", max_deviation}, {"seed", seed}, {"tolerance", tolerance},
          {"pass", pass}, {"notes", notes}};
}

Eigen::VectorXcd random_coefficients(Eigen::Index n, std::uint64_t seed, int trial) {
  std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(trial));
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd c(n);
  for (Eigen::Index p = 0; p < n; ++p) c(p) = {g(rng), g(rng)};
  return c;
}

namespace {

VerificationReport compare_weights(const std::string& name, nlohmann::json params, const Eigen::ArrayXd& mu0,
                                   const Eigen::ArrayXd& mu1, const InterpParam& psi,
                                   const Eigen::ArrayXd& direct, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.check = name;
  rep.parameters = std::move(params);
  rep.trials = opt.trials;
  rep.seed = opt.seed;
  rep.tolerance = opt.tolerance;
  for (int t = 0; t < opt.trials; ++t) {
    const Eigen::VectorXcd c = random_coefficients(mu0.size(), opt.seed, t);
    const double a = interpolated_norm(mu0, mu1, psi, c);
    const double b = std::sqrt((direct.square() * c.array().abs2()).sum());
    rep.max_deviation = std::max(rep.max_deviation, std::abs(a - b) / b);
  }
  rep.pass = rep.max_deviation <= opt.tolerance;
  return rep;
}

nlohmann::json lattice_json(const Lattice& l) { return {{"sizes", l.sizes()}, {"periods", l.periods()}}; }

}  // namespace

VerificationReport verify_interp_aniso(double s0, double s, double s1, double lambda,
                                     const FunctionParam& phi, const Lattice& lattice,
                                     const VerifyOptions& options) {
  const int k = lattice.dims();
  const InterpParam psi = build_psi(s0, s, s1, phi);
  const auto mu0 = weight_array(RegularityIndex::parabolic(s0 - lambda, FunctionParam(), k), lattice);
  const auto mu1 = weight_array(RegularityIndex::parabolic(s1 - lambda, FunctionParam(), k), lattice);
  const auto direct = weight_array(RegularityIndex::parabolic(s - lambda, phi, k), lattice);
  nlohmann::json params = {{"s0", s0}, {"s", s}, {"s1", s1}, {"lambda", lambda},
                           {"phi", phi.label()}, {"lattice", lattice_json(lattice)}};
  auto rep = compare_weights("interpolation equality (anisotropic)", params, mu0, mu1, psi, direct, options);
  if (s0 < 0.0 || lambda > s0) {
    rep.notes.push_back("0 <= s0 and lambda <= s0 are required on domains; the full-lattice identity holds regardless");
  }
  return rep;
}

VerificationReport verify_interp_iso(double s0, double s, double s1, const FunctionParam& phi,
                                   const Lattice& lattice, const VerifyOptions& options) {
  const int k = lattice.dims();
  const InterpParam psi = build_psi(s0, s, s1, phi);
  const auto mu0 = weight_array(RegularityIndex::isotropic(s0, FunctionParam(), k), lattice);
  const auto mu1 = weight_array(RegularityIndex::isotropic(s1, FunctionParam(), k), lattice);
  const auto direct = weight_array(RegularityIndex::isotropic(s, phi, k), lattice);
  nlohmann::json params = {{"s0", s0}, {"s", s}, {"s1", s1}, {"phi", phi.label()},
                           {"lattice", lattice_json(lattice)}};
  return compare_weights("interpolation equality (isotropic)", params, mu0, mu1, psi, direct, options);
}

VerificationReport verify_orthogonal_sum(const std::vector<AdmissiblePair>& pairs, const InterpParam& psi,
                                         const VerifyOptions& options) {
  if (pairs.size() < 2) throw InvalidArgument("orthogonal sum needs at least two pairs");
  std::vector<GeneratingMultiplier> blocks;
  Eigen::Index total = 0;
  for (const auto& p : pairs) {
    blocks.emplace_back(p);
    total += p.lattice.point_count();
  }
  Eigen::ArrayXd mu0(total), mu1(total);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    mu0.segment(off, b.mu0().size()) = b.mu0();
    mu1.segment(off, b.mu1().size()) = b.mu1();
    off += b.mu0().size();
  }
  VerificationReport rep;
  rep.check = "orthogonal sum";
  rep.parameters = {{"blocks", pairs.size()}, {"psi", psi.label()}};
  rep.trials = options.trials;
  rep.seed = options.seed;
  rep.tolerance = options.tolerance;
  for (int t = 0; t < options.trials; ++t) {
    const Eigen::VectorXcd c = random_coefficients(total, options.seed, t);
    const double whole = interpolated_norm(mu0, mu1, psi, c);
    double sq = 0.0;
    off = 0;
    for (const auto& b : blocks) {
      const Eigen::Index n = b.mu0().size();
      const double part = interpolated_norm(b.mu0(), b.mu1(), psi, c.segment(off, n));
      sq += part * part;
      off += n;
    }
    rep.max_deviation = std::max(rep.max_deviation, std::abs(whole - std::sqrt(sq)) / whole);
  }
  rep.pass = rep.max_deviation <= options.tolerance;
  return rep;
}

VerificationReport verify_reiteration(const InterpParam& alpha, const InterpParam& beta,
                                      const InterpParam& psi, const AdmissiblePair& pair,
                                      const VerifyOptions& options) {
  const InterpParam omega = reiterate(alpha, beta, psi);
  GeneratingMultiplier j(pair);
  const Eigen::Index n = j.values().size();
  Eigen::ArrayXd mu_alpha(n), mu_beta(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    mu_alpha(p) = j.mu0()(p) * alpha(j.values()(p));
    mu_beta(p) = j.mu0()(p) * beta(j.values()(p));
  }
  VerificationReport rep;
  rep.check = "reiteration";
  rep.parameters = {{"alpha", alpha.label()}, {"beta", beta.label()}, {"psi", psi.label()},
                    {"lattice", lattice_json(pair.lattice)}};
  rep.trials = options.trials;
  rep.seed = options.seed;
  rep.tolerance = options.tolerance;
  for (int t = 0; t < options.trials; ++t) {
    const Eigen::VectorXcd c = random_coefficients(n, options.seed, t);
    const double twice = interpolated_norm(mu_alpha, mu_beta, psi, c);
    const double direct = interpolated_norm(j.mu0(), j.mu1(), omega, c);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(twice - direct) / direct);
  }
  rep.pass = rep.max_deviation <= options.tolerance;
  return rep;
}

DenseHilbertPair diagonal_pair(const AdmissiblePair& pair) {
  GeneratingMultiplier j(pair);
  DenseHilbertPair d;
  const Eigen::VectorXcd w0 = j.mu0().square().matrix().cast<std::complex<double>>();
  const Eigen::VectorXcd w1 = j.mu1().square().matrix().cast<std::complex<double>>();
  d.gram0 = w0.asDiagonal();
  d.gram1 = w1.asDiagonal();
  return d;
}

SubspaceInterpolation::SubspaceInterpolation(const DenseHilbertPair& pair, const InterpParam& psi,
                                             const Eigen::MatrixXcd& projector, double tol)
    : projector_(projector), tol_(tol) {
  const Eigen::Index n = projector.rows();
  if (projector.cols() != n || pair.gram0.rows() != n || pair.gram1.rows() != n) {
    throw DimensionMismatch("projector and Gram matrices differ in size");
  }
  const double scale = std::max(1.0, projector.norm());
  if ((projector * projector - projector).norm() > tol * scale) {
    throw ProjectorMismatch("P o P differs from P");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(projector);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXcd q = qr.householderQ();
  basis_ = q.leftCols(rank);

  Eigen::MatrixXcd g0 = basis_.adjoint() * pair.gram0 * basis_;
  Eigen::MatrixXcd g1 = basis_.adjoint() * pair.gram1 * basis_;
  g0 = 0.5 * (g0 + g0.adjoint()).eval();
  g1 = 0.5 * (g1 + g1.adjoint()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(g1, g0);
  if (ges.info() != Eigen::Success) throw Error("generalized eigenproblem failed");
  const Eigen::MatrixXcd& v = ges.eigenvectors();  // v^* g0 v = I
  weights_.resize(rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    weights_(i) = psi(std::sqrt(std::max(ges.eigenvalues()(i), 0.0)));
  }
  analysis_ = v.adjoint() * g0 * basis_.adjoint();
}

double SubspaceInterpolation::norm(const Eigen::VectorXcd& u) const {
  if (u.size() != projector_.rows()) throw DimensionMismatch("vector length differs from projector");
  // An oblique P with large norm puts non-members close to range(P) in the
  // Euclidean sense, so membership is tested by the residual of P itself.
  const double slack = std::max(tol_, 1e3 * std::numeric_limits<double>::epsilon() * projector_.norm());
  if ((projector_ * u - u).norm() > slack * std::max(u.norm(), 1e-300)) {
    return std::numeric_limits<double>::infinity();
  }
  const Eigen::VectorXcd a = analysis_ * u;
  return std::sqrt((weights_.array().square() * a.array().abs2()).sum());
}

double interpolate_subspace_norm(const DenseHilbertPair& pair, const InterpParam& psi,
                                 const Eigen::MatrixXcd& projector, const Eigen::VectorXcd& u, double tol) {
  return SubspaceInterpolation(pair, psi, projector, tol).norm(u);
}

double interpolate_subspace_norm(const AdmissiblePair& pair, const InterpParam& psi,
                                 const Eigen::MatrixXcd& projector, const SpectralField& u, double tol) {
  if (u.lattice != pair.lattice) throw DimensionMismatch("field lattice differs from pair lattice");
  return interpolate_subspace_norm(diagonal_pair(pair), psi, projector, u.coeffs, tol);
}

}  // namespace hoermander
