#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hoermander/errors.hpp"
#include "hoermander/weights.hpp"

namespace hoermander {
namespace {

using testing::Gen;

TEST(Weight, ParabolicSubstitution) {
  const auto idx = RegularityIndex::parabolic(2.0, FunctionParam(), 2);
  EXPECT_DOUBLE_EQ(eval_weight(idx, Eigen::Vector2d(3.0, 5.0)), 15.0);
  // The time frequency enters through its absolute value.
  EXPECT_DOUBLE_EQ(eval_weight(idx, Eigen::Vector2d(3.0, -5.0)), 15.0);
}

TEST(Weight, ZeroFrequency) {
  const auto idx = RegularityIndex::isotropic(0.0, FunctionParam::log_power({2.0}), 3);
  EXPECT_DOUBLE_EQ(eval_weight(idx, Eigen::Vector3d::Zero()), 1.0);
}

TEST(Weight, LogWeightedParabolic) {
  const auto idx = RegularityIndex::parabolic(1.0, FunctionParam::log_power({1.0}), 3);
  const double w = eval_weight(idx, Eigen::Vector3d(0.0, 0.0, 3.0));
  EXPECT_NEAR(w, 2.0 * (1.0 + std::log(2.0)), 1e-14);
  EXPECT_NEAR(w, 3.3863, 1e-4);
}

TEST(Weight, LongDoubleAgreesWithDouble) {
  Gen gen(31);
  for (int c = 0; c < 100; ++c) {
    const auto idx = RegularityIndex::parabolic(gen.uniform(-3, 3), gen.slow_param(), 3);
    const Eigen::Vector3d xi = gen.real_vector(3, -100, 100);
    const double a = eval_weight<double>(idx, xi);
    const long double b = eval_weight<long double>(idx, xi);
    EXPECT_LT(std::abs(a - static_cast<double>(b)) / a, 1e-14);
  }
}

TEST(Weight, Validation) {
  EXPECT_THROW(RegularityIndex::parabolic(1.0, FunctionParam(), 1), InvalidArgument);
  EXPECT_THROW(RegularityIndex::isotropic(1.0, FunctionParam(), 0), InvalidArgument);
  EXPECT_EQ(RegularityIndex::parabolic(1.0, FunctionParam(), 3).spatial_dims(), 2);
  EXPECT_EQ(RegularityIndex::isotropic(1.0, FunctionParam(), 3).spatial_dims(), 3);
}

// Peetre: (1+|xi|^2)^{s/2} <= 2^{|s|/2} (1+|xi-eta|^2)^{|s|/2} (1+|eta|^2)^{s/2}.
TEST(Weight, PeetreInequalityIsotropic) {
  Gen gen(32);
  for (int c = 0; c < 2000; ++c) {
    const double s = gen.uniform(-4, 4);
    const auto idx = RegularityIndex::isotropic(s, FunctionParam(), 2);
    const Eigen::Vector2d xi = gen.real_vector(2, -50, 50), eta = gen.real_vector(2, -50, 50);
    const double ratio = eval_weight(idx, xi) / eval_weight(idx, eta);
    const double bound = std::pow(2.0 * (1.0 + (xi - eta).squaredNorm()), std::abs(s) / 2.0);
    EXPECT_LE(ratio, bound * (1 + 1e-12)) << "case " << c;
  }
}

// For the parabolic rho, 1 + |a + b|^2 + |c + d| <= 2 (1 + |a|^2 + |c|)(1 + |b|^2 + |d|).
TEST(Weight, PeetreInequalityParabolic) {
  Gen gen(33);
  for (int c = 0; c < 2000; ++c) {
    const double s = gen.uniform(-4, 4);
    const auto idx = RegularityIndex::parabolic(s, FunctionParam(), 2);
    const Eigen::Vector2d xi = gen.real_vector(2, -50, 50), eta = gen.real_vector(2, -50, 50);
    const Eigen::Vector2d d = xi - eta;
    const double rho_d = 1.0 + d(0) * d(0) + std::abs(d(1));
    const double ratio = eval_weight(idx, xi) / eval_weight(idx, eta);
    EXPECT_LE(ratio, std::pow(2.0 * rho_d, std::abs(s) / 2.0) * (1 + 1e-12)) << "case " << c;
  }
}

TEST(Admissibility, ConstantWeight) {
  const auto fit = check_admissibility(RegularityIndex::isotropic(0.0, FunctionParam(), 2), 1000);
  EXPECT_DOUBLE_EQ(fit.c, 1.0);
  EXPECT_DOUBLE_EQ(fit.l, 0.0);
  EXPECT_DOUBLE_EQ(fit.max_residual, 0.0);
  EXPECT_EQ(fit.pairs, 1000);
}

TEST(Admissibility, IsotropicSecondOrder) {
  const auto fit = check_admissibility(RegularityIndex::isotropic(2.0, FunctionParam(), 2), 10000);
  EXPECT_LE(fit.l, 2.1);
  EXPECT_GE(fit.c, 1.0);
  EXPECT_LE(fit.max_residual, 1e-12);
}

TEST(Admissibility, ParabolicNegativeOrder) {
  const auto fit = check_admissibility(RegularityIndex::parabolic(-1.0, FunctionParam(), 2), 10000);
  EXPECT_LE(fit.l, 2.1);
  EXPECT_THROW(check_admissibility(RegularityIndex::parabolic(-1.0, FunctionParam(), 2), 10), InvalidArgument);
}

}  // namespace
}  // namespace hoermander
