#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace hoermander {

/// Periodic lattice with N_j points (a power of two) on [0, L_j). Storage is
/// row-major, so the last axis (time, when present) is contiguous. Index i
/// along axis j carries the mode m = i for i < N/2 and i - N otherwise, with
/// frequency 2 pi m / L_j.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::vector<int> sizes, std::vector<double> periods);

  int dims() const { return static_cast<int>(sizes_.size()); }
  int size(int axis) const { return sizes_[axis]; }
  double period(int axis) const { return periods_[axis]; }
  const std::vector<int>& sizes() const { return sizes_; }
  const std::vector<double>& periods() const { return periods_; }
  Eigen::Index point_count() const { return count_; }
  Eigen::Index stride(int axis) const { return strides_[axis]; }

  int mode(int axis, int index) const;
  double frequency(int axis, int index) const;
  double coordinate(int axis, int index) const;

  std::vector<int> unravel(Eigen::Index flat) const;
  Eigen::Index ravel(const std::vector<int>& index) const;

  /// Frequency vector of a flat index.
  Eigen::VectorXd frequencies(Eigen::Index flat) const;

  bool operator==(const Lattice& o) const;
  bool operator!=(const Lattice& o) const { return !(*this == o); }

 private:
  std::vector<int> sizes_;
  std::vector<double> periods_;
  std::vector<Eigen::Index> strides_;
  Eigen::Index count_ = 0;
};

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// In-place unitary DFT over every axis of the lattice. Forward uses
/// exp(-i xi x); inverse uses exp(+i xi x); both scale by N^{-1/2}.
template <typename Scalar>
void unitary_dft(const Lattice& lattice, ComplexVector<Scalar>& data, bool inverse) {
  Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::Unscaled);
  std::vector<std::complex<Scalar>> in, out;
  for (int axis = 0; axis < lattice.dims(); ++axis) {
    const int n = lattice.size(axis);
    if (n == 1) continue;
    const Eigen::Index stride = lattice.stride(axis);
    const Eigen::Index block = stride * n;
    in.resize(n);
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(n));
    for (Eigen::Index outer = 0; outer < lattice.point_count(); outer += block) {
      for (Eigen::Index inner = 0; inner < stride; ++inner) {
        const Eigen::Index base = outer + inner;
        for (int i = 0; i < n; ++i) in[i] = data(base + i * stride);
        if (inverse) {
          fft.inv(out, in);
        } else {
          fft.fwd(out, in);
        }
        for (int i = 0; i < n; ++i) data(base + i * stride) = out[i] * scale;
      }
    }
  }
}

}  // namespace hoermander
