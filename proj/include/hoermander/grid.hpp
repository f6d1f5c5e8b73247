#pragma once

// Sample grids on the closed cylinder [0,1]_x x C_y x [0,tau]_t and the
// derivative stencils used on them. x and t are sampled at equispaced nodes
// including both ends; y is periodic (circle of length 2 pi) and
// differentiated spectrally.

#include <vector>

#include <Eigen/Core>

#include "hoermander/errors.hpp"

namespace hoermander {

enum class Geometry { Interval, PeriodicStrip };

/// A three-axis block of samples, index (i0 * n1 + i1) * n2 + i2.
struct GridShape {
  int n0 = 1, n1 = 1, n2 = 1;

  Eigen::Index size() const { return Eigen::Index(n0) * n1 * n2; }
  Eigen::Index index(int i0, int i1, int i2) const { return (Eigen::Index(i0) * n1 + i1) * n2 + i2; }
};

/// Node layouts: Omega-bar (ix, iy, it); S-bar (side, iy, it) with side 0 at
/// x = 0; G-bar (ix, iy); Gamma (side, iy). Interval geometry has ny = 1.
struct CylinderGrid {
  Geometry geometry = Geometry::Interval;
  int nx = 0, ny = 1, nt = 0;
  double tau = 1.0;

  /// nx = nt = box / 2 + 1, so that the periodic boxes used for quotient
  /// norms have `box` points per axis.
  static CylinderGrid make(Geometry geometry, int box, int ny = 4, double tau = 1.0);

  int box() const { return 2 * (nx - 1); }
  double hx() const { return 1.0 / (nx - 1); }
  double ht() const { return tau / (nt - 1); }
  double y_period() const;
  double x(int ix) const { return ix * hx(); }
  double y(int iy) const { return iy * y_period() / ny; }
  double t(int it) const { return it * ht(); }

  GridShape omega() const { return {nx, ny, nt}; }
  GridShape lateral() const { return {2, ny, nt}; }
  GridShape base() const { return {nx, ny, 1}; }
  GridShape gamma() const { return {2, ny, 1}; }

  bool operator==(const CylinderGrid& o) const = default;
};

/// Fornberg weights: row d holds the weights of the d-th derivative at z.
Eigen::MatrixXd fornberg_weights(double z, const std::vector<double>& nodes, int max_order);

/// d-th derivative along axis 0 or 2 by local stencils of min(d + 8, n)
/// equispaced nodes with spacing h. Throws InsufficientSmoothness when the
/// axis has fewer than d + 4 nodes.
Eigen::VectorXcd differentiate(const GridShape& shape, int axis, double h, const Eigen::VectorXcd& data,
                               int order);

/// d-th derivative along the periodic axis 1 (period L) by the unitary DFT;
/// the Nyquist mode is dropped for odd d.
Eigen::VectorXcd differentiate_periodic(const GridShape& shape, double period, const Eigen::VectorXcd& data,
                                        int order);

/// d^k/dt^k at the first node of axis 2 by a one-sided stencil of 2k + 4
/// nodes (order k + 4). The result has shape {n0, n1, 1}.
Eigen::VectorXcd initial_derivative(const GridShape& shape, double h, const Eigen::VectorXcd& data, int k);

/// Samples with the given index on axis 0 (shape {n0, n1, n2} -> {1, n1, n2}).
Eigen::VectorXcd slice_axis0(const GridShape& shape, const Eigen::VectorXcd& data, int i0);

/// u restricted to S-bar (x = 0 and x = 1).
Eigen::VectorXcd restrict_lateral(const CylinderGrid& grid, const Eigen::VectorXcd& u);
/// u(., 0) on G-bar.
Eigen::VectorXcd restrict_initial(const CylinderGrid& grid, const Eigen::VectorXcd& u);
/// G-bar samples restricted to Gamma.
Eigen::VectorXcd restrict_boundary(const CylinderGrid& grid, const Eigen::VectorXcd& w);

}  // namespace hoermander
