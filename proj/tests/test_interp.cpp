#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "hoermander/errors.hpp"
#include "hoermander/interp.hpp"

namespace hoermander {
namespace {

using testing::dense_half_norm;
using testing::Gen;

const double kTwoPi = 2.0 * M_PI;

AdmissiblePair iso_pair(double s0, double s1, const Lattice& l) {
  return {RegularityIndex::isotropic(s0, FunctionParam(), l.dims()),
          RegularityIndex::isotropic(s1, FunctionParam(), l.dims()), l};
}

InterpParam constant_one() {
  return InterpParam([](double) { return 1.0; }, "one");
}

TEST(GeneratingMultiplier, MapsX1ToX0) {
  Gen gen(51);
  const Lattice l({16, 16}, {kTwoPi, 3.0});
  const AdmissiblePair pair{RegularityIndex::parabolic(0.5, FunctionParam(), 2),
                            RegularityIndex::parabolic(2.5, FunctionParam::log_power({1.0}), 2), l};
  const GeneratingMultiplier j(pair);
  for (int c = 0; c < 20; ++c) {
    const SpectralField u(l, gen.complex_vector(l.point_count()));
    const SpectralField ju(l, (j.values() * u.coeffs.array()).matrix());
    EXPECT_LT(testing::relative_gap(norm(pair.x0, ju), norm(pair.x1, u)), 1e-13);
  }
}

TEST(InterpolatedNorm, EndpointsAndPowerCase) {
  Gen gen(52);
  const Lattice l({16, 16}, {kTwoPi, kTwoPi});
  const AdmissiblePair pair = iso_pair(0.0, 2.0, l);
  const SpectralField u(l, gen.complex_vector(l.point_count()));
  EXPECT_LT(testing::relative_gap(interpolated_norm(pair, constant_one(), u), norm(pair.x0, u)), 1e-14);
  EXPECT_LT(testing::relative_gap(interpolated_norm(pair, InterpParam::power(1.0), u), norm(pair.x1, u)), 1e-14);
  // |xi|^2 = 3 is not on this lattice; (1, 1) has |xi|^2 = 2 and H^1 weight sqrt(3).
  const auto mode = SpectralField::single_mode(l, {1, 1});
  EXPECT_NEAR(interpolated_norm(pair, InterpParam::power(0.5), mode), std::sqrt(3.0), 1e-14);
}

TEST(InterpolatedNorm, UnitModeAtXiSquaredThree) {
  // Period 2 pi / sqrt(3) puts mode 1 at |xi|^2 = 3.
  const Lattice l({8}, {kTwoPi / std::sqrt(3.0)});
  const AdmissiblePair pair = iso_pair(0.0, 2.0, l);
  EXPECT_NEAR(interpolated_norm(pair, InterpParam::power(0.5), SpectralField::single_mode(l, {1})), 2.0, 1e-13);
}

TEST(InterpolatedNorm, Embeddings) {
  Gen gen(53);
  const Lattice l({32}, {kTwoPi});
  const AdmissiblePair pair = iso_pair(-1.0, 3.0, l);
  const InterpParam psi = build_psi(-1.0, 0.5, 3.0, FunctionParam::log_power({-1.0}));
  const InterpEmbedding e = interpolation_embeddings(pair, psi);
  for (int c = 0; c < 50; ++c) {
    const SpectralField u(l, gen.complex_vector(l.point_count()));
    const double mid = interpolated_norm(pair, psi, u);
    EXPECT_LE(mid, e.x1_to_psi * norm(pair.x1, u) * (1 + 1e-12));
    EXPECT_LE(norm(pair.x0, u), e.psi_to_x0 * mid * (1 + 1e-12));
  }
}

TEST(VerifyInterp, AnisotropicPowerAndLogCases) {
  const Lattice l({32, 32}, {kTwoPi, kTwoPi});
  const auto plain = verify_interp_aniso(0.0, 1.0, 2.0, 0.0, FunctionParam(), l);
  EXPECT_TRUE(plain.pass);
  EXPECT_LE(plain.max_deviation, 1e-10);
  const auto log = verify_interp_aniso(0.0, 1.0, 2.0, 0.0, FunctionParam::log_power({1.0}), l);
  EXPECT_TRUE(log.pass) << log.to_json().dump();
  EXPECT_EQ(log.trials, 100);
  EXPECT_TRUE(log.notes.empty());
}

TEST(VerifyInterp, NotesOutsideDomainRange) {
  const Lattice l({16, 16}, {kTwoPi, kTwoPi});
  const auto rep = verify_interp_aniso(-1.0, 0.5, 2.0, 0.0, FunctionParam(), l, {10, 1, 1e-10});
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.notes.size(), 1u);
}

TEST(VerifyInterp, Isotropic) {
  const Lattice l({16, 16, 16}, {kTwoPi, kTwoPi, 2.0});
  const auto rep = verify_interp_iso(0.0, 1.0, 2.0, FunctionParam::log_power({1.0}), l);
  EXPECT_TRUE(rep.pass);
  const auto js = rep.to_json();
  EXPECT_EQ(js.at("pass").get<bool>(), true);
  EXPECT_EQ(js.at("trials").get<int>(), 100);
}

// Random (s0, s, s1, phi) on random lattices: the identity is pointwise.
TEST(VerifyInterp, RandomParameters) {
  Gen gen(54);
  for (int c = 0; c < 20; ++c) {
    const double s0 = gen.uniform(-2, 2), s1 = s0 + gen.uniform(0.5, 4), s = gen.uniform(s0 + 0.1, s1 - 0.1);
    const Lattice l({8, 16}, {gen.uniform(1, 10), gen.uniform(1, 10)});
    const auto rep = verify_interp_aniso(s0, s, s1, gen.uniform(0, 1), gen.slow_param(), l, {10, 7, 1e-10});
    EXPECT_TRUE(rep.pass) << "case " << c << " " << rep.max_deviation;
  }
}

TEST(OrthogonalSum, Pythagoras) {
  const Lattice l({8}, {kTwoPi});
  const AdmissiblePair pair = iso_pair(0.0, 2.0, l);
  const InterpParam psi = InterpParam::power(0.5);
  const auto a = SpectralField::single_mode(l, {0}, 3.0);
  const auto b = SpectralField::single_mode(l, {0}, 4.0);
  const double na = interpolated_norm(pair, psi, a), nb = interpolated_norm(pair, psi, b);
  EXPECT_NEAR(na, 3.0, 1e-14);
  EXPECT_NEAR(std::hypot(na, nb), 5.0, 1e-14);

  const auto rep = verify_orthogonal_sum({pair, iso_pair(-1.0, 3.0, Lattice({16}, {3.0}))}, psi);
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.max_deviation, 1e-12);
  EXPECT_THROW(verify_orthogonal_sum({pair}, psi), InvalidArgument);
}

TEST(Reiteration, ClassicalAndProofTriples) {
  const Lattice l({32, 32}, {kTwoPi, kTwoPi});
  const AdmissiblePair pair{RegularityIndex::parabolic(0.0, FunctionParam(), 2),
                            RegularityIndex::parabolic(1.0, FunctionParam(), 2), l};
  const VerifyOptions opt{100, 20240601, 1e-12};
  EXPECT_TRUE(verify_reiteration(constant_one(), InterpParam::power(1.0), InterpParam::power(0.3), pair, opt).pass);
  const FunctionParam phi = FunctionParam::log_power({1.0});
  const auto rep = verify_reiteration(half_reduction_alpha(0.25, 0.5, phi), half_reduction_beta(0.25, 0.5, phi),
                                      InterpParam::power(0.5), pair, opt);
  EXPECT_TRUE(rep.pass) << rep.max_deviation;
}

TEST(Reiteration, RandomPsi) {
  Gen gen(55);
  const Lattice l({16, 16}, {kTwoPi, kTwoPi});
  const AdmissiblePair pair = iso_pair(0.0, 1.0, l);
  for (int c = 0; c < 10; ++c) {
    const InterpParam alpha = build_psi(0.0, gen.uniform(0.05, 0.4), 1.0, gen.slow_param());
    const InterpParam beta = build_psi(0.0, gen.uniform(0.6, 0.95), 1.0, gen.slow_param());
    const InterpParam psi = build_psi(0.0, gen.uniform(0.1, 0.9), 1.0, gen.slow_param());
    EXPECT_TRUE(verify_reiteration(alpha, beta, psi, pair, {20, 3, 1e-12}).pass) << "case " << c;
  }
}

TEST(Subspace, FullSpaceEqualsInterpolatedNorm) {
  Gen gen(56);
  const Lattice l({16}, {kTwoPi});
  const AdmissiblePair pair = iso_pair(0.0, 2.0, l);
  const InterpParam psi = build_psi(0.0, 1.0, 2.0, FunctionParam::log_power({1.0}));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
  for (int c = 0; c < 10; ++c) {
    const SpectralField u(l, gen.complex_vector(16));
    EXPECT_LT(testing::relative_gap(interpolate_subspace_norm(pair, psi, id, u), interpolated_norm(pair, psi, u)),
              1e-12);
  }
}

TEST(Subspace, ComplementModeUnchanged) {
  const Lattice l({8}, {kTwoPi});
  const AdmissiblePair pair = iso_pair(0.0, 2.0, l);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(8, 8);
  p(0, 0) = 0.0;  // zero mean
  const auto mode = SpectralField::single_mode(l, {2});
  const InterpParam psi = InterpParam::power(0.5);
  EXPECT_LT(testing::relative_gap(interpolate_subspace_norm(pair, psi, p, mode), interpolated_norm(pair, psi, mode)),
            1e-12);
  EXPECT_TRUE(std::isinf(interpolate_subspace_norm(pair, psi, p, SpectralField::single_mode(l, {0}))));
}

// An oblique projector onto a random constraint: the subspace norm matches
// the geometric-mean oracle.
TEST(Subspace, ObliqueConstraintMatchesDenseOracle) {
  Gen gen(57);
  for (int c = 0; c < 20; ++c) {
    const Eigen::Index n = 8;
    Eigen::MatrixXcd a0 = gen.complex_vector(n * n).reshaped(n, n);
    Eigen::MatrixXcd a1 = gen.complex_vector(n * n).reshaped(n, n);
    const DenseHilbertPair pair{a0.adjoint() * a0 + Eigen::MatrixXcd::Identity(n, n),
                                a1.adjoint() * a1 + 2.0 * Eigen::MatrixXcd::Identity(n, n)};
    // P = I - w z^* / (z^* w) projects onto {z^* u = 0} along w.
    const Eigen::VectorXcd z = gen.complex_vector(n), w = gen.complex_vector(n);
    const Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n) - w * z.adjoint() / z.dot(w);
    const Eigen::VectorXcd u = p * gen.complex_vector(n);
    const double got = interpolate_subspace_norm(pair, InterpParam::power(0.5), p, u);
    EXPECT_LT(testing::relative_gap(got, dense_half_norm(pair, p, u)), 1e-8) << "case " << c;
    EXPECT_TRUE(std::isinf(interpolate_subspace_norm(pair, InterpParam::power(0.5), p, w)));
  }
}

TEST(Subspace, RejectsNonProjector) {
  const Lattice l({8}, {kTwoPi});
  const AdmissiblePair pair = iso_pair(0.0, 2.0, l);
  const Eigen::MatrixXcd twice = 2.0 * Eigen::MatrixXcd::Identity(8, 8);
  EXPECT_THROW(interpolate_subspace_norm(pair, InterpParam::power(0.5), twice, SpectralField::zero(l)),
               ProjectorMismatch);
  EXPECT_THROW(SubspaceInterpolation(diagonal_pair(pair), InterpParam::power(0.5), Eigen::MatrixXcd::Identity(4, 4)),
               DimensionMismatch);
}

}  // namespace
}  // namespace hoermander
