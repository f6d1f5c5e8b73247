#pragma once

// Quotient norms of grid functions on Omega, S, G and Gamma. Each closed
// interval [0, a] with n nodes is embedded in a periodic box of 2(n - 1)
// nodes and period 2a; the periodic y axis is decoupled by its unitary DFT,
// so every norm is a sum over y-modes of box quotient norms. Factorizations
// are built on first use and cached per (component, order, phi, |xi_y|).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include <Eigen/Core>

#include "hoermander/grid.hpp"
#include "hoermander/params.hpp"
#include "hoermander/spectra.hpp"

namespace hoermander {

enum class Component { Omega, Lateral, Base };

class CylinderNorms {
 public:
  using Factorization = QuotientFactorization<long double>;

  explicit CylinderNorms(CylinderGrid grid);

  const CylinderGrid& grid() const { return grid_; }

  /// H^{s,s/2;phi}(Omega) norm of Omega-bar samples.
  double omega(const Eigen::VectorXcd& u, double s, const FunctionParam& phi) const;
  /// H^{s,s/2;phi}(S) norm of S-bar samples (sides summed in l2).
  double lateral(const Eigen::VectorXcd& g, double s, const FunctionParam& phi) const;
  /// H^{s;phi}(G) norm of G-bar samples.
  double base(const Eigen::VectorXcd& h, double s, const FunctionParam& phi) const;
  /// H^{s}(Gamma) norm of Gamma samples: isotropic multiplier in y on each
  /// circle, the Euclidean norm for the two points of the interval.
  double boundary(const Eigen::VectorXcd& c, double s) const;

  /// Real symmetric matrix K with u^T K u = norm^2 for real data; only for
  /// the Interval geometry (ny = 1).
  Eigen::MatrixXd gram(Component component, double s, const FunctionParam& phi) const;

 private:
  using Key = std::tuple<int, double, std::string, int>;

  const Factorization& factorization(Component c, double s, const FunctionParam& phi, int mode) const;
  double component_norm(Component c, const GridShape& shape, const Eigen::VectorXcd& data, double s,
                        const FunctionParam& phi) const;

  CylinderGrid grid_;
  mutable std::mutex mutex_;
  mutable std::map<Key, std::unique_ptr<Factorization>> cache_;
};

}  // namespace hoermander
