#include "hoermander/lattice.hpp"

#include <cmath>
#include <numbers>

#include "hoermander/errors.hpp"

namespace hoermander {

namespace {
bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }
}  // namespace

Lattice::Lattice(std::vector<int> sizes, std::vector<double> periods)
    : sizes_(std::move(sizes)), periods_(std::move(periods)) {
  if (sizes_.empty() || sizes_.size() != periods_.size()) {
    throw DimensionMismatch("lattice sizes and periods must be nonempty and of equal length");
  }
  strides_.assign(sizes_.size(), 1);
  count_ = 1;
  for (int axis = dims() - 1; axis >= 0; --axis) {
    if (!power_of_two(sizes_[axis])) throw InvalidArgument("lattice sizes must be powers of two");
    if (!(periods_[axis] > 0.0)) throw InvalidArgument("lattice periods must be positive");
    strides_[axis] = count_;
    count_ *= sizes_[axis];
  }
}

int Lattice::mode(int axis, int index) const {
  const int n = sizes_[axis];
  if (n == 1) return 0;
  return index < n / 2 ? index : index - n;
}

double Lattice::frequency(int axis, int index) const {
  return 2.0 * std::numbers::pi * mode(axis, index) / periods_[axis];
}

double Lattice::coordinate(int axis, int index) const {
  return periods_[axis] * index / sizes_[axis];
}

std::vector<int> Lattice::unravel(Eigen::Index flat) const {
  std::vector<int> idx(sizes_.size());
  for (int axis = 0; axis < dims(); ++axis) {
    idx[axis] = static_cast<int>(flat / strides_[axis]);
    flat %= strides_[axis];
  }
  return idx;
}

Eigen::Index Lattice::ravel(const std::vector<int>& index) const {
  Eigen::Index flat = 0;
  for (int axis = 0; axis < dims(); ++axis) flat += index[axis] * strides_[axis];
  return flat;
}

Eigen::VectorXd Lattice::frequencies(Eigen::Index flat) const {
  Eigen::VectorXd xi(dims());
  for (int axis = 0; axis < dims(); ++axis) {
    xi(axis) = frequency(axis, static_cast<int>(flat / strides_[axis]));
    flat %= strides_[axis];
  }
  return xi;
}

bool Lattice::operator==(const Lattice& o) const {
  return sizes_ == o.sizes_ && periods_ == o.periods_;
}

}  // namespace hoermander
