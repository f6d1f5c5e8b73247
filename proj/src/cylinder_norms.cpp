#include "hoermander/cylinder_norms.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

namespace hoermander {

namespace {

// Unitary DFT along axis 1 of every (i0, i2) line.
Eigen::VectorXcd y_transform(const GridShape& shape, const Eigen::VectorXcd& data) {
  if (shape.n1 == 1) return data;
  Eigen::FFT<double> fft;
  const double scale = 1.0 / std::sqrt(static_cast<double>(shape.n1));
  std::vector<std::complex<double>> line(shape.n1), spec;
  Eigen::VectorXcd out(data.size());
  for (int i0 = 0; i0 < shape.n0; ++i0) {
    for (int i2 = 0; i2 < shape.n2; ++i2) {
      for (int i = 0; i < shape.n1; ++i) line[i] = data(shape.index(i0, i, i2));
      fft.fwd(spec, line);
      for (int i = 0; i < shape.n1; ++i) out(shape.index(i0, i, i2)) = spec[i] * scale;
    }
  }
  return out;
}

int y_mode(int index, int n) { return index < n / 2 ? index : index - n; }

}  // namespace

CylinderNorms::CylinderNorms(CylinderGrid grid) : grid_(grid) {
  if (grid_.nx < 5 || grid_.nt < 5) throw InvalidArgument("grid is too coarse for quotient norms");
}

const CylinderNorms::Factorization& CylinderNorms::factorization(Component c, double s, const FunctionParam& phi,
                                                                 int mode) const {
  const Key key{static_cast<int>(c), s, phi.label(), mode};
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;

  const int bx = grid_.box();
  const int bt = 2 * (grid_.nt - 1);
  const double xi_y = 2.0 * M_PI * mode / grid_.y_period();
  Lattice lattice;
  RegularityIndex idx;
  switch (c) {
    case Component::Omega:
      lattice = Lattice({bx, bt}, {2.0, 2.0 * grid_.tau});
      idx = RegularityIndex::parabolic(s, phi, 3);
      break;
    case Component::Lateral:
      lattice = Lattice({bt}, {2.0 * grid_.tau});
      idx = RegularityIndex::parabolic(s, phi, 2);
      break;
    case Component::Base:
      lattice = Lattice({bx}, {2.0});
      idx = RegularityIndex::isotropic(s, phi, 2);
      break;
  }
  const Eigen::Index count = lattice.point_count();
  Factorization::Array mu2(count);
  std::vector<bool> selected(count);
  for (Eigen::Index p = 0; p < count; ++p) {
    const Eigen::VectorXd f = lattice.frequencies(p);
    const std::vector<int> i = lattice.unravel(p);
    Eigen::VectorXd xi(3);
    switch (c) {
      case Component::Omega:
        xi = Eigen::Vector3d(f(0), xi_y, f(1));
        selected[p] = i[0] < grid_.nx && i[1] < grid_.nt;
        break;
      case Component::Lateral:
        xi = Eigen::Vector2d(xi_y, f(0));
        selected[p] = i[0] < grid_.nt;
        break;
      case Component::Base:
        xi = Eigen::Vector2d(f(0), xi_y);
        selected[p] = i[0] < grid_.nx;
        break;
    }
    const long double mu = eval_weight<long double>(idx, xi);
    mu2(p) = mu * mu;
  }
  auto f = std::make_unique<Factorization>(lattice, mu2, selected);
  const Factorization& ref = *f;
  cache_.emplace(key, std::move(f));
  return ref;
}

double CylinderNorms::component_norm(Component c, const GridShape& shape, const Eigen::VectorXcd& data,
                                     double s, const FunctionParam& phi) const {
  if (data.size() != shape.size()) throw DimensionMismatch("data does not match the component grid");
  const Eigen::VectorXcd hat = y_transform(shape, data);
  // Omega is one block over (ix, it); S has one block per side.
  const int blocks = c == Component::Lateral ? 2 : 1;
  const int per_block = c == Component::Lateral ? 1 : shape.n0;
  long double sum = 0.0L;
  for (int iy = 0; iy < shape.n1; ++iy) {
    const int mode = std::abs(y_mode(iy, shape.n1));
    for (int b = 0; b < blocks; ++b) {
      ComplexVector<long double> u(Eigen::Index(per_block) * shape.n2);
      bool nonzero = false;
      for (int i0 = 0; i0 < per_block; ++i0) {
        for (int i2 = 0; i2 < shape.n2; ++i2) {
          const std::complex<double> v = hat(shape.index(b * per_block + i0, iy, i2));
          nonzero = nonzero || v != 0.0;
          u(Eigen::Index(i0) * shape.n2 + i2) = std::complex<long double>(v.real(), v.imag());
        }
      }
      if (!nonzero) continue;
      const long double n = factorization(c, s, phi, mode).norm(u);
      sum += n * n;
    }
  }
  return static_cast<double>(std::sqrt(sum));
}

double CylinderNorms::omega(const Eigen::VectorXcd& u, double s, const FunctionParam& phi) const {
  return component_norm(Component::Omega, grid_.omega(), u, s, phi);
}

double CylinderNorms::lateral(const Eigen::VectorXcd& g, double s, const FunctionParam& phi) const {
  return component_norm(Component::Lateral, grid_.lateral(), g, s, phi);
}

double CylinderNorms::base(const Eigen::VectorXcd& h, double s, const FunctionParam& phi) const {
  return component_norm(Component::Base, grid_.base(), h, s, phi);
}

double CylinderNorms::boundary(const Eigen::VectorXcd& c, double s) const {
  const GridShape shape = grid_.gamma();
  if (c.size() != shape.size()) throw DimensionMismatch("data is not a Gamma grid function");
  const Eigen::VectorXcd hat = y_transform(shape, c);
  double sum = 0.0;
  for (int side = 0; side < 2; ++side) {
    for (int iy = 0; iy < shape.n1; ++iy) {
      const double xi = 2.0 * M_PI * y_mode(iy, shape.n1) / grid_.y_period();
      sum += std::pow(1.0 + xi * xi, s) * std::norm(hat(shape.index(side, iy, 0)));
    }
  }
  return std::sqrt(sum);
}

Eigen::MatrixXd CylinderNorms::gram(Component component, double s, const FunctionParam& phi) const {
  if (grid_.ny != 1) throw InvalidArgument("Gram matrices are formed for the interval geometry only");
  const Eigen::MatrixXd k = factorization(component, s, phi, 0).schur_matrix().cast<double>();
  if (component != Component::Lateral) return k;
  Eigen::MatrixXd both = Eigen::MatrixXd::Zero(2 * k.rows(), 2 * k.cols());
  both.topLeftCorner(k.rows(), k.cols()) = k;
  both.bottomRightCorner(k.rows(), k.cols()) = k;
  return both;
}

}  // namespace hoermander
