#include "hoermander/grid.hpp"

#include <algorithm>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace hoermander {

CylinderGrid CylinderGrid::make(Geometry geometry, int box, int ny, double tau) {
  if (box < 8 || (box & (box - 1)) != 0) throw InvalidArgument("box size must be a power of two >= 8");
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  CylinderGrid g;
  g.geometry = geometry;
  g.nx = box / 2 + 1;
  g.nt = box / 2 + 1;
  g.tau = tau;
  if (geometry == Geometry::PeriodicStrip) {
    if (ny < 2 || (ny & (ny - 1)) != 0) throw InvalidArgument("ny must be a power of two >= 2");
    g.ny = ny;
  } else {
    g.ny = 1;
  }
  return g;
}

double CylinderGrid::y_period() const { return 2.0 * std::numbers::pi; }

Eigen::MatrixXd fornberg_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m + 1, n);
  double c1 = 1.0;
  double c4 = x[0] - z;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c(k, i) = c1 * (k * c(k - 1, i - 1) - c5 * c(k, i - 1)) / c2;
        c(0, i) = -c1 * c5 * c(0, i - 1) / c2;
      }
      for (int k = mn; k >= 1; --k) c(k, j) = (c4 * c(k, j) - k * c(k - 1, j)) / c3;
      c(0, j) = c4 * c(0, j) / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

Eigen::Index axis_stride(const GridShape& s, int axis) {
  return axis == 0 ? Eigen::Index(s.n1) * s.n2 : axis == 1 ? s.n2 : 1;
}

int axis_size(const GridShape& s, int axis) { return axis == 0 ? s.n0 : axis == 1 ? s.n1 : s.n2; }

}  // namespace

Eigen::VectorXcd differentiate(const GridShape& shape, int axis, double h, const Eigen::VectorXcd& data,
                               int order) {
  if (axis != 0 && axis != 2) throw InvalidArgument("finite differences act on axis 0 or 2");
  if (data.size() != shape.size()) throw DimensionMismatch("data does not match grid shape");
  if (order == 0) return data;
  const int n = axis_size(shape, axis);
  if (n < order + 4) throw InsufficientSmoothness("too few nodes for the requested derivative order");
  const int width = std::min(order + 8, n);
  std::vector<double> nodes(width);
  // Weights per target node; the window is centred and clamped to the axis.
  std::vector<int> start(n);
  std::vector<Eigen::VectorXd> weights(n);
  for (int i = 0; i < n; ++i) {
    start[i] = std::clamp(i - width / 2, 0, n - width);
    for (int j = 0; j < width; ++j) nodes[j] = (start[i] + j) * h;
    weights[i] = fornberg_weights(i * h, nodes, order).row(order).transpose();
  }
  const Eigen::Index stride = axis_stride(shape, axis);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(data.size());
  for (Eigen::Index base = 0; base < data.size(); ++base) {
    const int i = static_cast<int>((base / stride) % n);
    const Eigen::Index line = base - Eigen::Index(i) * stride;
    std::complex<double> acc = 0.0;
    for (int j = 0; j < width; ++j) acc += weights[i](j) * data(line + Eigen::Index(start[i] + j) * stride);
    out(base) = acc;
  }
  return out;
}

Eigen::VectorXcd differentiate_periodic(const GridShape& shape, double period, const Eigen::VectorXcd& data,
                                        int order) {
  if (data.size() != shape.size()) throw DimensionMismatch("data does not match grid shape");
  if (order == 0) return data;
  const int n = shape.n1;
  if (n == 1) return Eigen::VectorXcd::Zero(data.size());
  std::vector<std::complex<double>> mult(n);
  for (int i = 0; i < n; ++i) {
    const int m = i < n / 2 ? i : i - n;
    if (2 * i == n && order % 2 == 1) {
      mult[i] = 0.0;
      continue;
    }
    const std::complex<double> ik(0.0, 2.0 * std::numbers::pi * m / period);
    std::complex<double> f = 1.0;
    for (int d = 0; d < order; ++d) f *= ik;
    mult[i] = f;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> line(n), spec;
  Eigen::VectorXcd out(data.size());
  for (int i0 = 0; i0 < shape.n0; ++i0) {
    for (int i2 = 0; i2 < shape.n2; ++i2) {
      for (int i = 0; i < n; ++i) line[i] = data(shape.index(i0, i, i2));
      fft.fwd(spec, line);
      for (int i = 0; i < n; ++i) spec[i] *= mult[i];
      fft.inv(line, spec);
      for (int i = 0; i < n; ++i) out(shape.index(i0, i, i2)) = line[i];
    }
  }
  return out;
}

Eigen::VectorXcd initial_derivative(const GridShape& shape, double h, const Eigen::VectorXcd& data, int k) {
  if (data.size() != shape.size()) throw DimensionMismatch("data does not match grid shape");
  const int width = 2 * k + 4;
  if (shape.n2 < width) throw InsufficientSmoothness("too few time nodes for the requested trace");
  std::vector<double> nodes(width);
  for (int j = 0; j < width; ++j) nodes[j] = j * h;
  const Eigen::VectorXd w = fornberg_weights(0.0, nodes, k).row(k).transpose();
  Eigen::VectorXcd out(Eigen::Index(shape.n0) * shape.n1);
  for (int i0 = 0; i0 < shape.n0; ++i0) {
    for (int i1 = 0; i1 < shape.n1; ++i1) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < width; ++j) acc += w(j) * data(shape.index(i0, i1, j));
      out(Eigen::Index(i0) * shape.n1 + i1) = acc;
    }
  }
  return out;
}

Eigen::VectorXcd slice_axis0(const GridShape& shape, const Eigen::VectorXcd& data, int i0) {
  const Eigen::Index block = Eigen::Index(shape.n1) * shape.n2;
  return data.segment(i0 * block, block);
}

Eigen::VectorXcd restrict_lateral(const CylinderGrid& grid, const Eigen::VectorXcd& u) {
  const GridShape s = grid.omega();
  if (u.size() != s.size()) throw DimensionMismatch("data is not an Omega-bar grid function");
  const Eigen::Index block = Eigen::Index(s.n1) * s.n2;
  Eigen::VectorXcd g(2 * block);
  g.head(block) = slice_axis0(s, u, 0);
  g.tail(block) = slice_axis0(s, u, s.n0 - 1);
  return g;
}

Eigen::VectorXcd restrict_initial(const CylinderGrid& grid, const Eigen::VectorXcd& u) {
  const GridShape s = grid.omega();
  if (u.size() != s.size()) throw DimensionMismatch("data is not an Omega-bar grid function");
  Eigen::VectorXcd h(Eigen::Index(s.n0) * s.n1);
  for (int i0 = 0; i0 < s.n0; ++i0) {
    for (int i1 = 0; i1 < s.n1; ++i1) h(Eigen::Index(i0) * s.n1 + i1) = u(s.index(i0, i1, 0));
  }
  return h;
}

Eigen::VectorXcd restrict_boundary(const CylinderGrid& grid, const Eigen::VectorXcd& w) {
  const GridShape s = grid.base();
  if (w.size() != s.size()) throw DimensionMismatch("data is not a G-bar grid function");
  Eigen::VectorXcd c(2 * s.n1);
  c.head(s.n1) = w.head(s.n1);
  c.tail(s.n1) = w.tail(s.n1);
  return c;
}

}  // namespace hoermander
