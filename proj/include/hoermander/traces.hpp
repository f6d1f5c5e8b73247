#pragma once

// Cauchy-data traces R and the lifting T:
// T v = F^{-1}[beta(<xi>^2 t) sum_k v_k^(xi) t^k / k!] on periodic lattices
// (the whole-space proxy) and its restriction to strips [0, tau].

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "hoermander/errors.hpp"
#include "hoermander/jet.hpp"
#include "hoermander/parabolic.hpp"
#include "hoermander/spectra.hpp"

namespace hoermander {

/// With w the width: beta = 1 on |tau| <= w/2, 0 on |tau| >= w, and on
/// w/2 < |tau| < w beta = f(1 - u) / (f(1 - u) + f(u)) with u = 2|tau|/w - 1,
/// f(x) = exp(-1/x).
class CutoffProfile {
 public:
  explicit CutoffProfile(double width = 1.0) : width_(width) {
    if (!(width > 0.0)) throw InvalidArgument("cutoff width must be positive");
  }

  double width() const { return width_; }
  double flat_radius() const { return 0.5 * width_; }
  double support_radius() const { return width_; }

  double operator()(double tau) const { return eval(tau); }

  /// Works for double and Jet<double>; the branch is chosen by the value.
  template <typename T>
  T eval(const T& tau) const {
    const double a = std::abs(value_of(tau)) / width_;
    if (a <= 0.5) return constant_like(tau, 1.0);
    if (a >= 1.0) return constant_like(tau, 0.0);
    const T u = (value_of(tau) > 0 ? tau : -tau) * (2.0 / width_) - constant_like(tau, 1.0);
    using std::exp;
    const T one = constant_like(tau, 1.0);
    const T fa = exp(-one / (one - u));
    const T fb = exp(-one / u);
    return fa / (fa + fb);
  }

 private:
  static double value_of(double v) { return v; }
  static double value_of(const Jet<double>& v) { return v.value(); }
  static double constant_like(double, double c) { return c; }
  static Jet<double> constant_like(const Jet<double>& like, double c) { return Jet<double>(like.order(), c); }

  double width_;
};

/// (v_0, ..., v_{r-1}) as physical samples on one spatial lattice.
struct CauchyData {
  Lattice lattice;
  std::vector<Eigen::VectorXcd> components;

  int r() const { return static_cast<int>(components.size()); }
  /// Complex Gaussian samples, deterministic in (seed, trial).
  static CauchyData random(const Lattice& lattice, int r, std::uint64_t seed, int trial);
};

/// Spatial lattice of a space-time lattice (all axes but the last).
Lattice spatial_section(const Lattice& space_time);

enum class TraceMethod { Stencil, Spectral };

/// (d_t^k u |_{t=0})_{k<r} on the spatial lattice. Stencil: centred finite
/// differences over 2r + 5 periodic time nodes around t = 0, exact for
/// fields that are polynomials of degree <= 2r + 4 in t there. Spectral:
/// differentiation of the time Fourier series; throws
/// InsufficientTimeResolution when the top quarter of time modes carries more
/// than 1e-20 of the energy.
CauchyData trace_R(const SpectralField& u, int r, TraceMethod method = TraceMethod::Stencil);

/// T v on the space-time lattice. Throws CutoffWrapsAround unless the time
/// period exceeds 2 support_radius / <xi>_min^2 = 2 support_radius, and
/// DimensionMismatch if v lives on another spatial lattice.
SpectralField lift_T(const CauchyData& v, const CutoffProfile& beta, const Lattice& target);

/// d_t^j of the Fourier-side profile beta(<xi>^2 t) sum v_k^ t^k / k! at t = 0,
/// evaluated with Taylor jets; equals v_j because beta is flat at 0.
CauchyData lift_jet_trace(const CauchyData& v, const CutoffProfile& beta);

/// Samples on the closed strip R^{n-1}_lattice x [0, tau] with nt nodes,
/// index p * nt + it for spatial point p.
struct StripField {
  Lattice lattice;
  int nt = 0;
  double tau = 1.0;
  Eigen::VectorXcd samples;

  double ht() const { return tau / (nt - 1); }
};

/// (T v) restricted to the strip.
StripField lift_T_strip(const CauchyData& v, const CutoffProfile& beta, const Lattice& spatial, int nt,
                        double tau);

/// d_t^k at t = 0 by one-sided stencils of 2k + 4 nodes.
CauchyData trace_R_strip(const StripField& u, int r);

/// c1 = int |d_tau^m (beta tau^k)|^2 dtau and c2 = int |tau^k beta|^2 dtau by
/// composite Gauss-Legendre quadrature on the smooth pieces.
struct BetaConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};
BetaConstants beta_constants(const CutoffProfile& beta, int k, int m);

/// The narrowest cutoff whose flat region holds the t = 0 stencils of the
/// first r traces at every boundary frequency of the grid (width >= 1), so
/// that the discrete trace of the lift reproduces c exactly.
CutoffProfile compatibility_cutoff(const CylinderGrid& grid, int r);

/// P(f, g, h) = (f, g*, h) with g* = g + T(c) and c_k = rhs_k - d_t^k g |Gamma
/// for k < r (rhs_k = v_k |Gamma, or B_k[v] for first-order conditions). T
/// acts on each side of S with the boundary lattice as spatial lattice.
ProblemData compatibility_projector(const DiscreteOperator& op, const ProblemData& data, int r,
                             const CutoffProfile& beta);
ProblemData compatibility_projector(const DiscreteOperator& op, const ProblemData& data, int r);

/// P as a dense matrix on stacked (f, g, h) vectors, with compatibility_cutoff.
Eigen::MatrixXcd compatibility_projector_matrix(const DiscreteOperator& op, int r);

}  // namespace hoermander
