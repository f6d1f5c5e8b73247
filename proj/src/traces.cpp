#include "hoermander/traces.hpp"

#include <random>

#include "hoermander/quadrature.hpp"

namespace hoermander {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double bracket_squared(const Lattice& spatial, Eigen::Index p) {
  return 1.0 + spatial.frequencies(p).squaredNorm();
}

// Inverse spatial DFT of every time slice of a (spatial point, time) array.
void inverse_spatial(const Lattice& spatial, int nt, Eigen::VectorXcd& data) {
  const Eigen::Index np = spatial.point_count();
  ComplexVector<double> slice(np);
  for (int it = 0; it < nt; ++it) {
    for (Eigen::Index p = 0; p < np; ++p) slice(p) = data(p * nt + it);
    unitary_dft<double>(spatial, slice, true);
    for (Eigen::Index p = 0; p < np; ++p) data(p * nt + it) = slice(p);
  }
}

std::vector<Eigen::VectorXcd> spatial_coefficients(const CauchyData& v) {
  std::vector<Eigen::VectorXcd> hat;
  for (const auto& c : v.components) {
    if (c.size() != v.lattice.point_count()) throw DimensionMismatch("Cauchy component has the wrong length");
    ComplexVector<double> w = c;
    unitary_dft<double>(v.lattice, w, false);
    hat.push_back(w);
  }
  return hat;
}

// Fourier-side profile beta(b t) sum_k c_k t^k / k! at time t.
std::complex<double> profile(const CutoffProfile& beta, double b, const std::vector<Eigen::VectorXcd>& hat,
                             Eigen::Index p, double t) {
  const double w = beta(b * t);
  if (w == 0.0) return 0.0;
  std::complex<double> sum = 0.0;
  double tk = 1.0;
  for (std::size_t k = 0; k < hat.size(); ++k) {
    sum += hat[k](p) * tk / factorial(static_cast<int>(k));
    tk *= t;
  }
  return w * sum;
}

}  // namespace

CauchyData CauchyData::random(const Lattice& lattice, int r, std::uint64_t seed, int trial) {
  if (r < 1) throw InvalidArgument("Cauchy data needs r >= 1");
  std::mt19937_64 rng(seed * 7919ULL + static_cast<std::uint64_t>(trial));
  std::normal_distribution<double> g(0.0, 1.0);
  CauchyData v{lattice, {}};
  for (int k = 0; k < r; ++k) {
    Eigen::VectorXcd c(lattice.point_count());
    for (Eigen::Index p = 0; p < c.size(); ++p) c(p) = {g(rng), g(rng)};
    v.components.push_back(c);
  }
  return v;
}

Lattice spatial_section(const Lattice& st) {
  if (st.dims() < 2) throw DimensionMismatch("space-time lattice needs at least two axes");
  std::vector<int> sizes(st.sizes().begin(), st.sizes().end() - 1);
  std::vector<double> periods(st.periods().begin(), st.periods().end() - 1);
  return Lattice(sizes, periods);
}

CauchyData trace_R(const SpectralField& u, int r, TraceMethod method) {
  if (r < 1) throw InvalidArgument("trace order r must be >= 1");
  const Lattice spatial = spatial_section(u.lattice);
  const int nt = u.lattice.size(u.lattice.dims() - 1);
  const double period = u.lattice.period(u.lattice.dims() - 1);
  const Eigen::Index np = spatial.point_count();
  CauchyData out{spatial, std::vector<Eigen::VectorXcd>(r, Eigen::VectorXcd::Zero(np))};

  if (method == TraceMethod::Stencil) {
    const int half = r + 2;
    if (nt < 2 * half + 1) throw InsufficientTimeResolution("too few time nodes for the trace stencil");
    const double dt = period / nt;
    std::vector<double> nodes;
    for (int j = -half; j <= half; ++j) nodes.push_back(j * dt);
    const Eigen::MatrixXd w = fornberg_weights(0.0, nodes, r - 1);
    const Eigen::VectorXcd samples = u.samples();
    for (Eigen::Index p = 0; p < np; ++p) {
      for (int k = 0; k < r; ++k) {
        std::complex<double> acc = 0.0;
        for (int j = -half; j <= half; ++j) acc += w(k, j + half) * samples(p * nt + ((j + nt) % nt));
        out.components[k](p) = acc;
      }
    }
    return out;
  }

  double total = 0.0, tail = 0.0;
  for (Eigen::Index p = 0; p < np; ++p) {
    for (int it = 0; it < nt; ++it) {
      const double e = std::norm(u.coeffs(p * nt + it));
      const int m = u.lattice.mode(u.lattice.dims() - 1, it);
      total += e;
      if (4 * std::abs(m) >= nt) tail += e;
    }
  }
  if (tail > 1e-20 * total) throw InsufficientTimeResolution("time spectrum is not resolved");
  const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
  for (Eigen::Index p = 0; p < np; ++p) {
    for (int it = 0; it < nt; ++it) {
      const int m = u.lattice.mode(u.lattice.dims() - 1, it);
      const std::complex<double> iw(0.0, 2.0 * M_PI * m / period);
      std::complex<double> f = scale;
      for (int k = 0; k < r; ++k) {
        if (!(2 * it == nt && k % 2 == 1)) out.components[k](p) += f * u.coeffs(p * nt + it);
        f *= iw;
      }
    }
  }
  for (auto& c : out.components) {
    ComplexVector<double> w = c;
    unitary_dft<double>(spatial, w, true);
    c = w;
  }
  return out;
}

SpectralField lift_T(const CauchyData& v, const CutoffProfile& beta, const Lattice& target) {
  const Lattice spatial = spatial_section(target);
  if (spatial != v.lattice) throw DimensionMismatch("Cauchy data and target lattice differ in space");
  const int nt = target.size(target.dims() - 1);
  const double period = target.period(target.dims() - 1);
  if (period <= 2.0 * beta.support_radius()) {
    throw CutoffWrapsAround("time period does not contain the cutoff support at zero frequency");
  }
  const auto hat = spatial_coefficients(v);
  const Eigen::Index np = spatial.point_count();
  Eigen::VectorXcd data(np * nt);
  for (Eigen::Index p = 0; p < np; ++p) {
    const double b = bracket_squared(spatial, p);
    for (int it = 0; it < nt; ++it) {
      double t = it * period / nt;
      if (t >= period / 2) t -= period;
      data(p * nt + it) = profile(beta, b, hat, p, t);
    }
  }
  inverse_spatial(spatial, nt, data);
  return SpectralField::from_samples(target, data);
}

CauchyData lift_jet_trace(const CauchyData& v, const CutoffProfile& beta) {
  const int r = v.r();
  const auto hat = spatial_coefficients(v);
  const Eigen::Index np = v.lattice.point_count();
  CauchyData out{v.lattice, std::vector<Eigen::VectorXcd>(r, Eigen::VectorXcd::Zero(np))};
  const int order = r - 1;
  for (Eigen::Index p = 0; p < np; ++p) {
    const double b = bracket_squared(v.lattice, p);
    const Jet<double> bt = Jet<double>::variable(order, 0.0) * b;
    const Jet<double> cut = beta.eval(bt);
    for (int j = 0; j < r; ++j) {
      // Taylor coefficient j of cut(t) * sum_k hat_k t^k / k!, times j!.
      std::complex<double> c = 0.0;
      for (int i = 0; i <= j; ++i) c += cut[i] * hat[j - i](p) / factorial(j - i);
      out.components[j](p) = c * factorial(j);
    }
  }
  for (auto& c : out.components) {
    ComplexVector<double> w = c;
    unitary_dft<double>(v.lattice, w, true);
    c = w;
  }
  return out;
}

StripField lift_T_strip(const CauchyData& v, const CutoffProfile& beta, const Lattice& spatial, int nt, double tau) {
  if (spatial != v.lattice) throw DimensionMismatch("Cauchy data and strip lattice differ");
  if (nt < 2 || !(tau > 0.0)) throw InvalidArgument("strip needs nt >= 2 and tau > 0");
  const auto hat = spatial_coefficients(v);
  const Eigen::Index np = spatial.point_count();
  StripField out{spatial, nt, tau, Eigen::VectorXcd(np * nt)};
  for (Eigen::Index p = 0; p < np; ++p) {
    const double b = bracket_squared(spatial, p);
    for (int it = 0; it < nt; ++it) out.samples(p * nt + it) = profile(beta, b, hat, p, it * out.ht());
  }
  inverse_spatial(spatial, nt, out.samples);
  return out;
}

CauchyData trace_R_strip(const StripField& u, int r) {
  if (r < 1) throw InvalidArgument("trace order r must be >= 1");
  const Eigen::Index np = u.lattice.point_count();
  const GridShape shape{1, static_cast<int>(np), u.nt};
  CauchyData out{u.lattice, {}};
  for (int k = 0; k < r; ++k) {
    if (u.nt < 2 * k + 4) throw InsufficientTimeResolution("too few time nodes for the trace stencil");
    out.components.push_back(initial_derivative(shape, u.ht(), u.samples, k));
  }
  return out;
}

BetaConstants beta_constants(const CutoffProfile& beta, int k, int m) {
  if (k < 0 || m < 0 || m > Jet<double>::kMaxOrder) throw InvalidArgument("invalid (k, m)");
  const auto [x, w] = gauss_legendre(24);
  BetaConstants out;
  auto accumulate = [&](double a, double b, int panels) {
    const double h = (b - a) / panels;
    for (int q = 0; q < panels; ++q) {
      const double lo = a + q * h;
      for (int i = 0; i < x.size(); ++i) {
        const double tau = lo + 0.5 * h * (x(i) + 1.0);
        const Jet<double> t = Jet<double>::variable(m, tau);
        Jet<double> tk(m, 1.0);
        for (int j = 0; j < k; ++j) tk = tk * t;
        const Jet<double> prod = beta.eval(t) * tk;
        const double d = prod.derivative(m);
        out.c1 += 0.5 * h * w(i) * d * d;
        out.c2 += 0.5 * h * w(i) * prod.value() * prod.value();
      }
    }
  };
  // The integrands are even; [0, 1/2] is polynomial, [1/2, 1] the rolloff.
  accumulate(0.0, beta.flat_radius(), 1);
  accumulate(beta.flat_radius(), beta.support_radius(), 64);
  out.c1 *= 2.0;
  out.c2 *= 2.0;
  return out;
}

CutoffProfile compatibility_cutoff(const CylinderGrid& grid, int r) {
  const int m = grid.ny / 2;
  const double xi = 2.0 * M_PI * m / grid.y_period();
  const double bracket = 1.0 + xi * xi;
  // The stencil of d_t^{r-1} spans (2r + 1) nodes after t = 0.
  const double span = (2.0 * r + 1.0) * grid.ht();
  return CutoffProfile(std::max(1.0, 2.0 * span * bracket * (1.0 + 1e-9)));
}

ProblemData compatibility_projector(const DiscreteOperator& op, const ProblemData& data, int r) {
  return compatibility_projector(op, data, r, compatibility_cutoff(op.grid(), r));
}

ProblemData compatibility_projector(const DiscreteOperator& op, const ProblemData& data, int r, const CutoffProfile& beta) {
  if (r < 1) return data;
  const CylinderGrid& grid = op.grid();
  const auto v = op.compute_v(data.f, data.h, r - 1);
  std::vector<Eigen::VectorXcd> c;
  for (int k = 0; k < r; ++k) {
    c.push_back(compatibility_rhs(op, v, k) - initial_derivative(grid.lateral(), grid.ht(), data.g, k));
  }
  const Lattice boundary({grid.ny}, {grid.y_period()});
  ProblemData out = data;
  const Eigen::Index block = Eigen::Index(grid.ny) * grid.nt;
  for (int side = 0; side < 2; ++side) {
    CauchyData cd{boundary, {}};
    for (int k = 0; k < r; ++k) cd.components.push_back(c[k].segment(side * grid.ny, grid.ny));
    const StripField lift = lift_T_strip(cd, beta, boundary, grid.nt, grid.tau);
    out.g.segment(side * block, block) += lift.samples;
  }
  return out;
}

Eigen::MatrixXcd compatibility_projector_matrix(const DiscreteOperator& op, int r) {
  const CutoffProfile beta = compatibility_cutoff(op.grid(), r);
  const CylinderGrid& grid = op.grid();
  const Eigen::Index n = grid.omega().size() + grid.lateral().size() + grid.base().size();
  Eigen::MatrixXcd p(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.col(i) = compatibility_projector(op, ProblemData::unstack(grid, Eigen::VectorXcd::Unit(n, i)), r, beta).stacked();
  }
  return p;
}

}  // namespace hoermander
