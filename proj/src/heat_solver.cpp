#include "hoermander/heat_solver.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include "hoermander/quadrature.hpp"

namespace hoermander {

namespace {

// Legendre values L_0..L_n and first derivatives at z in [-1, 1].
void legendre(int n, double z, Eigen::VectorXd& p, Eigen::VectorXd& dp) {
  p.resize(n + 1);
  dp.resize(n + 1);
  p(0) = 1.0;
  dp(0) = 0.0;
  if (n >= 1) {
    p(1) = z;
    dp(1) = 1.0;
  }
  for (int k = 1; k < n; ++k) {
    p(k + 1) = ((2.0 * k + 1.0) * z * p(k) - k * p(k - 1)) / (k + 1.0);
    dp(k + 1) = dp(k - 1) + (2.0 * k + 1.0) * p(k);
  }
}

Eigen::VectorXd legendre_row(int n, double z) {
  Eigen::VectorXd p, dp;
  legendre(n, z, p, dp);
  return p;
}

// Least-squares Legendre fit in one variable on [0, a] nodes.
Eigen::MatrixXd fit_matrix(int nodes, int degree) {
  Eigen::MatrixXd v(nodes, degree + 1);
  for (int i = 0; i < nodes; ++i) v.row(i) = legendre_row(degree, -1.0 + 2.0 * i / (nodes - 1)).transpose();
  return v;
}

// Real least-squares solve applied to real and imaginary parts.
template <typename Qr>
Eigen::MatrixXcd solve_parts(const Qr& qr, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXd re = qr.solve(Eigen::MatrixXd(b.real()));
  const Eigen::MatrixXd im = qr.solve(Eigen::MatrixXd(b.imag()));
  Eigen::MatrixXcd out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

bool is_heat(const ParabolicProblem& p) {
  if (p.geometry != Geometry::Interval || p.boundary != BoundaryKind::Dirichlet) return false;
  bool second = false;
  for (const auto& t : p.terms) {
    if (t.a.is_zero()) continue;
    if (t.alpha[0] != 2 || !t.a.is_constant() || t.a(0, 0, 0) != std::complex<double>(1.0)) return false;
    second = true;
  }
  return second;
}

}  // namespace

Eigen::VectorXcd solve_heat(const DiscreteOperator& op, const ProblemData& data, const HeatSolverOptions& opt) {
  if (!is_heat(op.problem())) throw InvalidArgument("the solver handles the interval heat problem with Dirichlet data");
  const CylinderGrid& grid = op.grid();
  const int nx = grid.nx, nt = grid.nt;
  const double tau = grid.tau;
  const int dx = std::min(opt.fit_degree, nx - 1);
  const int dt = std::min(opt.fit_degree, nt - 1);

  // Data fits: f ~ sum F_ab L_a(x~) L_b(t~), g_side ~ sum G_b L_b(t~), h ~ sum H_a L_a(x~).
  const Eigen::MatrixXd vx = fit_matrix(nx, dx), vt = fit_matrix(nt, dt);
  const auto qx = vx.colPivHouseholderQr();
  const auto qt = vt.colPivHouseholderQr();
  Eigen::MatrixXcd fgrid(nx, nt);
  for (int ix = 0; ix < nx; ++ix)
    for (int it = 0; it < nt; ++it) fgrid(ix, it) = data.f(grid.omega().index(ix, 0, it));
  const Eigen::MatrixXcd fx = solve_parts(qx, fgrid);                            // (dx+1) x nt
  const Eigen::MatrixXcd fc = solve_parts(qt, fx.transpose()).transpose();       // (dx+1) x (dt+1)
  const Eigen::VectorXcd g0 = solve_parts(qt, data.g.head(nt));
  const Eigen::VectorXcd g1 = solve_parts(qt, data.g.segment(nt, nt));
  const Eigen::VectorXcd hc = solve_parts(qx, data.h);

  const int kx = opt.x_modes, kt = opt.t_modes;
  const int nq = std::max({kx + 2, kt, dx, dt}) + 4;
  const auto [z, w] = gauss_legendre(nq);

  // Tabulate basis functions at the quadrature nodes (reference interval).
  const int lmax = std::max({kx + 1, kt - 1, dx, dt});
  std::vector<Eigen::VectorXd> lp(nq), ldp(nq);
  for (int q = 0; q < nq; ++q) legendre(lmax, z(q), lp[q], ldp[q]);
  auto phi = [&](int i, int q) { return lp[q](i) - lp[q](i + 2); };
  auto dphi = [&](int i, int q) { return ldp[q](i) - ldp[q](i + 2); };

  // x on [0, 1]: dx = dz / 2. t on [0, tau]: dt = tau dz / 2.
  Eigen::MatrixXd mx = Eigen::MatrixXd::Zero(kx, kx), sx = Eigen::MatrixXd::Zero(kx, kx);
  for (int m = 0; m < kx; ++m)
    for (int i = 0; i < kx; ++i)
      for (int q = 0; q < nq; ++q) {
        mx(m, i) += 0.5 * w(q) * phi(m, q) * phi(i, q);
        sx(m, i) += 2.0 * w(q) * dphi(m, q) * dphi(i, q);
      }
  const int tests = kt - 1;
  Eigen::MatrixXd mt = Eigen::MatrixXd::Zero(tests, kt), dmt = Eigen::MatrixXd::Zero(tests, kt);
  for (int m = 0; m < tests; ++m)
    for (int j = 0; j < kt; ++j)
      for (int q = 0; q < nq; ++q) {
        mt(m, j) += 0.5 * tau * w(q) * lp[q](m) * lp[q](j);
        dmt(m, j) += w(q) * lp[q](m) * ldp[q](j);
      }

  // Right-hand side F = f - d_t lift, lift = (1 - x) g0 + x g1.
  auto eval_t = [&](const Eigen::VectorXcd& c, int q, bool derivative) {
    std::complex<double> s = 0.0;
    for (int b = 0; b < c.size(); ++b) s += c(b) * (derivative ? ldp[q](b) * 2.0 / tau : lp[q](b));
    return s;
  };
  const int n = kx * kt;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  auto col = [&](int i, int j) { return i * kt + j; };
  int row = 0;
  for (int m = 0; m < kx; ++m) {
    for (int p = 0; p < tests; ++p, ++row) {
      for (int i = 0; i < kx; ++i)
        for (int j = 0; j < kt; ++j) a(row, col(i, j)) = mx(m, i) * dmt(p, j) + sx(m, i) * mt(p, j);
      std::complex<double> r = 0.0;
      for (int qx2 = 0; qx2 < nq; ++qx2) {
        const double x = 0.5 * (z(qx2) + 1.0);
        for (int qt2 = 0; qt2 < nq; ++qt2) {
          std::complex<double> f = 0.0;
          for (int ai = 0; ai <= dx; ++ai)
            for (int bi = 0; bi <= dt; ++bi) f += fc(ai, bi) * lp[qx2](ai) * lp[qt2](bi);
          f -= (1.0 - x) * eval_t(g0, qt2, true) + x * eval_t(g1, qt2, true);
          r += 0.5 * w(qx2) * 0.5 * tau * w(qt2) * phi(m, qx2) * lp[qt2](p) * f;
        }
      }
      rhs(row) = r;
    }
  }
  // Initial condition, Galerkin in x: sum_i M_mi sum_j c_ij L_j(-1) = (phi_m, h - lift(., 0)).
  for (int m = 0; m < kx; ++m, ++row) {
    for (int i = 0; i < kx; ++i)
      for (int j = 0; j < kt; ++j) a(row, col(i, j)) = mx(m, i) * ((j % 2 == 0) ? 1.0 : -1.0);
    std::complex<double> r = 0.0;
    std::complex<double> g00 = 0.0, g10 = 0.0;
    for (int b = 0; b < g0.size(); ++b) {
      g00 += (b % 2 == 0 ? 1.0 : -1.0) * g0(b);
      g10 += (b % 2 == 0 ? 1.0 : -1.0) * g1(b);
    }
    for (int q = 0; q < nq; ++q) {
      const double x = 0.5 * (z(q) + 1.0);
      std::complex<double> h = 0.0;
      for (int ai = 0; ai <= dx; ++ai) h += hc(ai) * lp[q](ai);
      h -= (1.0 - x) * g00 + x * g10;
      r += 0.5 * w(q) * phi(m, q) * h;
    }
    rhs(row) = r;
  }
  const Eigen::VectorXcd c = a.fullPivLu().solve(rhs);

  Eigen::VectorXcd u(grid.omega().size());
  Eigen::VectorXd px, dpx, pt, dpt;
  for (int ix = 0; ix < nx; ++ix) {
    const double x = grid.x(ix);
    legendre(kx + 1, 2.0 * x - 1.0, px, dpx);
    for (int it = 0; it < nt; ++it) {
      const double zt = 2.0 * grid.t(it) / tau - 1.0;
      legendre(std::max<int>(kt - 1, static_cast<int>(g0.size()) - 1), zt, pt, dpt);
      std::complex<double> v = 0.0;
      for (int i = 0; i < kx; ++i)
        for (int j = 0; j < kt; ++j) v += c(col(i, j)) * (px(i) - px(i + 2)) * pt(j);
      std::complex<double> l0 = 0.0, l1 = 0.0;
      for (int b = 0; b < g0.size(); ++b) {
        l0 += g0(b) * pt(b);
        l1 += g1(b) * pt(b);
      }
      u(grid.omega().index(ix, 0, it)) = v + (1.0 - x) * l0 + x * l1;
    }
  }
  return u;
}

}  // namespace hoermander
