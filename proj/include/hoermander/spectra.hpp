#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "hoermander/errors.hpp"
#include "hoermander/lattice.hpp"
#include "hoermander/weights.hpp"

namespace hoermander {

/// Fourier coefficients of a lattice function under the unitary DFT.
struct SpectralField {
  Lattice lattice;
  Eigen::VectorXcd coeffs;

  SpectralField() = default;
  SpectralField(Lattice l, Eigen::VectorXcd c);

  static SpectralField zero(const Lattice& lattice);
  static SpectralField from_samples(const Lattice& lattice, const Eigen::VectorXcd& samples);
  /// Unit coefficient at the given integer modes (one per axis).
  static SpectralField single_mode(const Lattice& lattice, const std::vector<int>& modes,
                                   std::complex<double> coefficient = 1.0);

  Eigen::VectorXcd samples() const;
};

/// Boolean selection of lattice points; must be nonempty and not full.
class SubdomainMask {
 public:
  SubdomainMask(Lattice lattice, std::vector<bool> selected);

  const Lattice& lattice() const { return lattice_; }
  const std::vector<Eigen::Index>& inside() const { return inside_; }
  const std::vector<Eigen::Index>& outside() const { return outside_; }
  bool contains(Eigen::Index flat) const { return selected_[flat]; }

 private:
  Lattice lattice_;
  std::vector<bool> selected_;
  std::vector<Eigen::Index> inside_, outside_;
};

/// mu at every lattice point. Throws above 2^24 points; norms stream instead.
template <typename Scalar = double>
Eigen::Array<Scalar, Eigen::Dynamic, 1> weight_array(const RegularityIndex& idx,
                                                      const Lattice& lattice) {
  if (idx.k != lattice.dims()) throw DimensionMismatch("index dimension differs from lattice");
  if (lattice.point_count() > (Eigen::Index(1) << 24)) {
    throw InvalidArgument("weight arrays are not materialized above 2^24 points");
  }
  Eigen::Array<Scalar, Eigen::Dynamic, 1> w(lattice.point_count());
  for (Eigen::Index p = 0; p < lattice.point_count(); ++p) {
    w(p) = eval_weight<Scalar>(idx, lattice.frequencies(p));
  }
  return w;
}

double norm(const RegularityIndex& idx, const SpectralField& u);
std::complex<double> inner_product(const RegularityIndex& idx, const SpectralField& u,
                                   const SpectralField& v);

/// max over the lattice of mu_to / mu_from.
double embedding_constant(const RegularityIndex& idx_from, const RegularityIndex& idx_to,
                          const Lattice& lattice);

struct QuotientOptions {
  double tol = 1e-8;
  int max_iterations = 0;  // 0 selects ceil(10 sqrt(#masked points))
};

struct QuotientResult {
  double norm = 0.0;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// min ||w||_mu over lattice fields w whose samples equal `samples_on_mask`
/// (ordered as mask.inside()). Conjugate gradients on the masked-point system
/// R F^{-1} mu^{-2} F R^T y = u, preconditioned by R F^{-1} mu^2 F R^T, with
/// each direction re-conjugated against up to 2^23 / M earlier ones; the
/// squared norm is the dual value 2 Re<y,u> - <y, G y>.
QuotientResult quotient_norm_cg(const RegularityIndex& idx, const Eigen::VectorXcd& samples_on_mask,
                                const SubdomainMask& mask, const QuotientOptions& options = {});

double quotient_norm(const RegularityIndex& idx, const Eigen::VectorXcd& samples_on_mask,
                     const SubdomainMask& mask, double tol = 1e-8);

/// Direct quotient norm for repeated use with one weight and mask: the values
/// outside the mask are eliminated with a Cholesky factorization of the
/// outside block of the circulant F^{-1} mu^2 F. The norm is then evaluated as
/// ||mu F w|| of the optimal extension. Scalar sets the working precision.
template <typename Scalar>
class QuotientFactorization {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  QuotientFactorization(const Lattice& lattice, const Array& mu_squared,
                        const std::vector<bool>& selected)
      : lattice_(lattice), mu_squared_(mu_squared) {
    if (mu_squared.size() != lattice.point_count()) {
      throw DimensionMismatch("weight array does not match lattice");
    }
    for (Eigen::Index p = 0; p < lattice.point_count(); ++p) {
      (selected[p] ? inside_ : outside_).push_back(p);
    }
    if (inside_.empty()) throw InvalidArgument("mask is empty");
    kernel_ = circulant_kernel();
    const Eigen::Index no = static_cast<Eigen::Index>(outside_.size());
    const Eigen::Index ni = static_cast<Eigen::Index>(inside_.size());
    if (no > 0) {
      Matrix h(no, no);
      for (Eigen::Index a = 0; a < no; ++a) {
        for (Eigen::Index b = 0; b < no; ++b) h(a, b) = entry(outside_[a], outside_[b]);
      }
      coupling_.resize(no, ni);
      for (Eigen::Index a = 0; a < no; ++a) {
        for (Eigen::Index b = 0; b < ni; ++b) coupling_(a, b) = entry(outside_[a], inside_[b]);
      }
      llt_.compute(h);
      if (llt_.info() != Eigen::Success) throw Error("outside block is not positive definite");
    }
  }

  Eigen::Index inside_count() const { return static_cast<Eigen::Index>(inside_.size()); }

  /// Optimal extension (all lattice samples) of the given masked samples.
  ComplexVector<Scalar> extension(const ComplexVector<Scalar>& u) const {
    ComplexVector<Scalar> w = ComplexVector<Scalar>::Zero(lattice_.point_count());
    for (std::size_t b = 0; b < inside_.size(); ++b) w(inside_[b]) = u(b);
    if (!outside_.empty()) {
      const Vector re = -llt_.solve(coupling_ * u.real());
      const Vector im = -llt_.solve(coupling_ * u.imag());
      for (std::size_t a = 0; a < outside_.size(); ++a) {
        w(outside_[a]) = std::complex<Scalar>(re(a), im(a));
      }
    }
    return w;
  }

  Scalar norm(const ComplexVector<Scalar>& u) const {
    if (u.size() != inside_count()) throw DimensionMismatch("sample count differs from mask");
    ComplexVector<Scalar> w = extension(u);
    unitary_dft<Scalar>(lattice_, w, false);
    Scalar sum(0);
    for (Eigen::Index p = 0; p < w.size(); ++p) sum += mu_squared_(p) * std::norm(w(p));
    using std::sqrt;
    return sqrt(sum);
  }

  /// Schur complement K with u^* K u = norm(u)^2 (real symmetric).
  Matrix schur_matrix() const {
    const Eigen::Index ni = inside_count();
    Matrix k(ni, ni);
    for (Eigen::Index a = 0; a < ni; ++a) {
      for (Eigen::Index b = 0; b < ni; ++b) k(a, b) = entry(inside_[a], inside_[b]);
    }
    if (!outside_.empty()) k -= coupling_.transpose() * llt_.solve(coupling_);
    return Scalar(0.5) * (k + k.transpose());
  }

 private:
  // kernel(d) = N^{-1} sum_xi mu^2(xi) exp(i xi d); real since mu^2 is even.
  Array circulant_kernel() const {
    ComplexVector<Scalar> c(lattice_.point_count());
    for (Eigen::Index p = 0; p < c.size(); ++p) c(p) = std::complex<Scalar>(mu_squared_(p), 0);
    unitary_dft<Scalar>(lattice_, c, true);
    using std::sqrt;
    const Scalar scale = Scalar(1) / sqrt(Scalar(lattice_.point_count()));
    return c.real().array() * scale;
  }

  Scalar entry(Eigen::Index p, Eigen::Index q) const {
    Eigen::Index flat = 0;
    for (int axis = 0; axis < lattice_.dims(); ++axis) {
      const Eigen::Index s = lattice_.stride(axis);
      const int n = lattice_.size(axis);
      const int ip = static_cast<int>((p / s) % n);
      const int iq = static_cast<int>((q / s) % n);
      flat += ((ip - iq + n) % n) * s;
    }
    return kernel_(flat);
  }

  Lattice lattice_;
  Array mu_squared_;
  Array kernel_;
  std::vector<Eigen::Index> inside_, outside_;
  Matrix coupling_;
  Eigen::LLT<Matrix> llt_;
};

enum class FieldFormat { Binary, Csv };

/// Writes `<base>.json` ({sizes, periods, format}) and `<base>.bin` or `<base>.csv`.
void save_field(const SpectralField& u, const std::string& base, FieldFormat format);
SpectralField load_field(const std::string& base);

}  // namespace hoermander
