#include "hoermander/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

#include <json.hpp>

namespace hoermander {

namespace {

void require_same(const RegularityIndex& idx, const Lattice& lattice) {
  if (idx.k != lattice.dims()) throw DimensionMismatch("index dimension differs from lattice");
}

}  // namespace

SpectralField::SpectralField(Lattice l, Eigen::VectorXcd c) : lattice(std::move(l)), coeffs(std::move(c)) {
  if (coeffs.size() != lattice.point_count()) throw DimensionMismatch("coefficient count differs from lattice");
}

SpectralField SpectralField::zero(const Lattice& lattice) {
  return SpectralField(lattice, Eigen::VectorXcd::Zero(lattice.point_count()));
}

SpectralField SpectralField::from_samples(const Lattice& lattice, const Eigen::VectorXcd& samples) {
  ComplexVector<double> c = samples;
  if (c.size() != lattice.point_count()) throw DimensionMismatch("sample count differs from lattice");
  unitary_dft<double>(lattice, c, false);
  return SpectralField(lattice, c);
}

SpectralField SpectralField::single_mode(const Lattice& lattice, const std::vector<int>& modes,
                                         std::complex<double> coefficient) {
  if (static_cast<int>(modes.size()) != lattice.dims()) throw DimensionMismatch("mode vector length");
  std::vector<int> index(modes.size());
  for (int axis = 0; axis < lattice.dims(); ++axis) {
    const int n = lattice.size(axis);
    if (modes[axis] < -n / 2 || modes[axis] >= std::max(n / 2, 1)) {
      throw InvalidArgument("mode outside lattice range");
    }
    index[axis] = (modes[axis] + n) % n;
  }
  SpectralField u = zero(lattice);
  u.coeffs(lattice.ravel(index)) = coefficient;
  return u;
}

Eigen::VectorXcd SpectralField::samples() const {
  ComplexVector<double> s = coeffs;
  unitary_dft<double>(lattice, s, true);
  return s;
}

SubdomainMask::SubdomainMask(Lattice lattice, std::vector<bool> selected)
    : lattice_(std::move(lattice)), selected_(std::move(selected)) {
  if (static_cast<Eigen::Index>(selected_.size()) != lattice_.point_count()) {
    throw DimensionMismatch("mask size differs from lattice");
  }
  for (Eigen::Index p = 0; p < lattice_.point_count(); ++p) {
    (selected_[p] ? inside_ : outside_).push_back(p);
  }
  if (inside_.empty() || outside_.empty()) throw InvalidArgument("mask must be nonempty and not full");
}

double norm(const RegularityIndex& idx, const SpectralField& u) {
  require_same(idx, u.lattice);
  double sum = 0.0;
  for (Eigen::Index p = 0; p < u.lattice.point_count(); ++p) {
    if (u.coeffs(p) == 0.0) continue;
    const double mu = eval_weight(idx, u.lattice.frequencies(p));
    sum += mu * mu * std::norm(u.coeffs(p));
  }
  return std::sqrt(sum);
}

std::complex<double> inner_product(const RegularityIndex& idx, const SpectralField& u,
                                   const SpectralField& v) {
  require_same(idx, u.lattice);
  if (u.lattice != v.lattice) throw DimensionMismatch("fields live on different lattices");
  std::complex<double> sum = 0.0;
  for (Eigen::Index p = 0; p < u.lattice.point_count(); ++p) {
    const double mu = eval_weight(idx, u.lattice.frequencies(p));
    sum += mu * mu * u.coeffs(p) * std::conj(v.coeffs(p));
  }
  return sum;
}

double embedding_constant(const RegularityIndex& idx_from, const RegularityIndex& idx_to,
                          const Lattice& lattice) {
  require_same(idx_from, lattice);
  require_same(idx_to, lattice);
  if (idx_from.anisotropy != idx_to.anisotropy) throw DimensionMismatch("anisotropy differs");
  double best = 0.0;
  for (Eigen::Index p = 0; p < lattice.point_count(); ++p) {
    const Eigen::VectorXd xi = lattice.frequencies(p);
    best = std::max(best, eval_weight(idx_to, xi) / eval_weight(idx_from, xi));
  }
  return best;
}

QuotientResult quotient_norm_cg(const RegularityIndex& idx, const Eigen::VectorXcd& samples_on_mask,
                                const SubdomainMask& mask, const QuotientOptions& options) {
  const Lattice& lattice = mask.lattice();
  require_same(idx, lattice);
  const auto& inside = mask.inside();
  const Eigen::Index m = static_cast<Eigen::Index>(inside.size());
  if (samples_on_mask.size() != m) throw DimensionMismatch("sample count differs from mask");
  if (!(options.tol > 0.0 && options.tol <= 1e-4)) throw InvalidArgument("tol must lie in (0, 1e-4]");

  const Eigen::ArrayXd mu2 = weight_array(idx, lattice).square();
  const Eigen::ArrayXd inv_mu2 = mu2.inverse();
  const int cap = options.max_iterations > 0
                      ? options.max_iterations
                      : static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(m))));

  // R F^{-1} w F R^T on masked samples.
  ComplexVector<double> scratch(lattice.point_count());
  auto masked_multiplier = [&](const Eigen::ArrayXd& w, const Eigen::VectorXcd& y) {
    scratch.setZero();
    for (Eigen::Index b = 0; b < m; ++b) scratch(inside[b]) = y(b);
    unitary_dft<double>(lattice, scratch, false);
    scratch.array() *= w;
    unitary_dft<double>(lattice, scratch, true);
    Eigen::VectorXcd out(m);
    for (Eigen::Index b = 0; b < m; ++b) out(b) = scratch(inside[b]);
    return out;
  };
  auto apply = [&](const Eigen::VectorXcd& y) { return masked_multiplier(inv_mu2, y); };
  // The masked mu^2 multiplier inverts the system exactly on a full mask.
  auto precondition = [&](const Eigen::VectorXcd& r) { return masked_multiplier(mu2, r); };

  QuotientResult res;
  const double unorm = samples_on_mask.norm();
  if (unorm == 0.0) return res;

  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(m);
  Eigen::VectorXcd r = samples_on_mask;
  Eigen::VectorXcd z = precondition(r);
  Eigen::VectorXcd p = z;
  std::complex<double> rz = r.dot(z);
  // Earlier directions and their images: each new direction is made
  // G-conjugate to them, which rounding otherwise erodes. The history holds
  // at most 2^24 complex entries; past that it is a sliding window.
  const std::size_t window = std::max<std::size_t>(1, (std::size_t(1) << 23) / static_cast<std::size_t>(m));
  std::deque<Eigen::VectorXcd> dirs, images;
  std::deque<double> curvature;
  int it = 0;
  while (r.norm() / unorm >= options.tol) {
    if (it >= cap) {
      throw NoConvergence("quotient_norm: CG exceeded its iteration cap", it);
    }
    for (std::size_t j = 0; j < dirs.size(); ++j) p -= (images[j].dot(p) / curvature[j]) * dirs[j];
    const Eigen::VectorXcd gp = apply(p);
    const double pgp = p.dot(gp).real();
    const std::complex<double> alpha = p.dot(r) / pgp;
    y += alpha * p;
    r -= alpha * gp;
    z = precondition(r);
    const std::complex<double> rz_next = r.dot(z);
    dirs.push_back(p);
    images.push_back(gp);
    curvature.push_back(pgp);
    if (dirs.size() > window) {
      dirs.pop_front();
      images.pop_front();
      curvature.pop_front();
    }
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    ++it;
  }
  const Eigen::VectorXcd gy = apply(y);
  const double value = 2.0 * y.dot(samples_on_mask).real() - y.dot(gy).real();
  res.norm = std::sqrt(std::max(value, 0.0));
  res.iterations = it;
  res.relative_residual = (samples_on_mask - gy).norm() / unorm;
  return res;
}

double quotient_norm(const RegularityIndex& idx, const Eigen::VectorXcd& samples_on_mask,
                     const SubdomainMask& mask, double tol) {
  QuotientOptions opt;
  opt.tol = tol;
  return quotient_norm_cg(idx, samples_on_mask, mask, opt).norm;
}

void save_field(const SpectralField& u, const std::string& base, FieldFormat format) {
  nlohmann::json header = {{"sizes", u.lattice.sizes()},
                           {"periods", u.lattice.periods()},
                           {"format", format == FieldFormat::Binary ? "binary" : "csv"}};
  std::ofstream(base + ".json") << header.dump(2) << "\n";
  if (format == FieldFormat::Binary) {
    std::ofstream out(base + ".bin", std::ios::binary);
    out.write(reinterpret_cast<const char*>(u.coeffs.data()),
              static_cast<std::streamsize>(u.coeffs.size() * sizeof(std::complex<double>)));
  } else {
    std::ofstream out(base + ".csv");
    out.precision(17);
    out << "re,im\n";
    for (Eigen::Index p = 0; p < u.coeffs.size(); ++p) {
      out << u.coeffs(p).real() << "," << u.coeffs(p).imag() << "\n";
    }
  }
}

SpectralField load_field(const std::string& base) {
  std::ifstream hin(base + ".json");
  if (!hin) throw InvalidArgument("cannot open " + base + ".json");
  nlohmann::json header;
  hin >> header;
  Lattice lattice(header.at("sizes").get<std::vector<int>>(),
                  header.at("periods").get<std::vector<double>>());
  Eigen::VectorXcd c(lattice.point_count());
  if (header.value("format", "binary") == "binary") {
    std::ifstream in(base + ".bin", std::ios::binary);
    in.read(reinterpret_cast<char*>(c.data()),
            static_cast<std::streamsize>(c.size() * sizeof(std::complex<double>)));
    if (!in) throw ParseError("binary field file is truncated");
  } else {
    std::ifstream in(base + ".csv");
    std::string line;
    std::getline(in, line);
    for (Eigen::Index p = 0; p < c.size(); ++p) {
      if (!std::getline(in, line)) throw ParseError("csv field file is truncated");
      const auto comma = line.find(',');
      c(p) = {std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))};
    }
  }
  return SpectralField(lattice, c);
}

}  // namespace hoermander
