#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mmspace/family.h"
#include "mmspace/spectral.h"
#include "test_util.h"

using namespace mmspace;

namespace {

Subset pts(const Space& s, std::vector<int> idx) { return Subset::from_indices(s, idx); }

TEST(Laplacian, TwoPoint) {
  const Eigen::MatrixXd l = laplacian(two_point(1.0));
  Eigen::MatrixXd expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_LE((l - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Laplacian, Cycle4AndConstants) {
  const Eigen::MatrixXd l = laplacian(cycle(4));
  Eigen::VectorXd f(4);
  f << 1.0, 3.0, -2.0, 0.5;
  const Eigen::VectorXd lf = l * f;
  for (int x = 0; x < 4; ++x) {
    EXPECT_NEAR(lf(x), 2 * f(x) - f((x + 3) % 4) - f((x + 1) % 4), 1e-14);
  }
  EXPECT_LE((l * Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff(), 1e-15);
  const Space metric = build_space({"a", "b"}, {{0, 1}, {1, 0}}, {0.5, 0.5});
  EXPECT_MM_ERROR(laplacian(metric), ErrorCode::kNoGraphData);
}

TEST(Laplacian, SelfAdjointInWeightedSpace) {
  const Space s = random_space(9, 4, true);
  const Eigen::MatrixXd l = laplacian(s);
  Eigen::VectorXd mu(9);
  for (int x = 0; x < 9; ++x) mu(x) = s.mu(x);
  const Eigen::MatrixXd ml = mu.asDiagonal() * l;
  EXPECT_LE((ml - ml.transpose()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Spectrum, ClosedForms) {
  const Spectrum x2 = spectrum(two_point(1.0));
  EXPECT_NEAR(x2.eigenvalues(0), 0.0, 1e-9);
  EXPECT_NEAR(x2.eigenvalues(1), 2.0, 1e-9);
  const Spectrum c4 = spectrum(cycle(4));
  const double expect[] = {0, 2, 2, 4};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(c4.eigenvalues(i), expect[i], 1e-9);

  // Cycle eigenvalues 2 - 2cos(2 pi j / n), path 2 - 2cos(pi j / n),
  // hypercube 2j with multiplicity C(d, j).
  for (int n : {5, 8, 13}) {
    std::vector<double> closed;
    for (int j = 0; j < n; ++j) closed.push_back(2 - 2 * std::cos(2 * std::numbers::pi * j / n));
    std::sort(closed.begin(), closed.end());
    const Spectrum s = spectrum(cycle(n));
    for (int j = 0; j < n; ++j) EXPECT_NEAR(s.eigenvalues(j), closed[j], 1e-9);
  }
  const Spectrum p6 = spectrum(path(6));
  for (int j = 0; j < 6; ++j) {
    EXPECT_NEAR(p6.eigenvalues(j), 2 - 2 * std::cos(std::numbers::pi * j / 6), 1e-9);
  }
  const Spectrum q3 = spectrum(hypercube(3));
  const double cube[] = {0, 2, 2, 2, 4, 4, 4, 6};
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(q3.eigenvalues(j), cube[j], 1e-9);
}

TEST(Spectrum, SignConventionAndJson) {
  const Spectrum s = spectrum(cycle(6));
  for (int j = 0; j < 6; ++j) {
    for (int x = 0; x < 6; ++x) {
      if (std::abs(s.eigenfunctions(x, j)) > 1e-12) {
        EXPECT_GT(s.eigenfunctions(x, j), 0.0);
        break;
      }
    }
  }
  const Json j = spectrum_to_json(spectrum(cycle(4)), 2);
  EXPECT_EQ(j["conductance_convention"], "edge=1/n");
  EXPECT_EQ(j["eigenvalues"].size(), 2u);
}

TEST(Spectrum, ScalesInverseSquare) {
  const Spectrum a = spectrum(random_space(7, 2, true));
  const Spectrum b = spectrum(scaled(random_space(7, 2, true), 3.0));
  for (int j = 0; j < 7; ++j) EXPECT_NEAR(b.eigenvalues(j) * 9.0, a.eigenvalues(j), 1e-12);
}

TEST(HeatKernel, TwoPointClosedForm) {
  for (double t : {0.05, 0.5, 2.0}) {
    const HeatKernel p = heat_kernel(two_point(1.0), t);
    EXPECT_NEAR(p.values(0, 1), 1 - std::exp(-2 * t), 1e-12);
    EXPECT_NEAR(p.values(0, 0), 1 + std::exp(-2 * t), 1e-12);
  }
  EXPECT_MM_ERROR(heat_kernel(two_point(1.0), 0.0), ErrorCode::kBadTime);
  EXPECT_MM_ERROR(heat_kernel(two_point(1.0), -1.0), ErrorCode::kBadTime);
}

TEST(HeatKernel, LongTimeIsConstant) {
  const Space s = cycle(6);
  const double t = 40.0;
  const double lambda1 = spectrum(s).eigenvalues(1);
  const HeatKernel p = heat_kernel(s, t);
  EXPECT_LE((p.values.array() - 1.0).abs().maxCoeff(), 6 * std::exp(-lambda1 * t) + 1e-12);
}

TEST(DaviesGaffney, TwoPoint) {
  const Space x2 = two_point(1.0);
  const double t[] = {0.1, 1.0};
  const CheckReport r = davies_gaffney_check(x2, pts(x2, {0}), pts(x2, {1}), t);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_TRUE(r.passed());
  const auto& small = r.checks[0].measured;
  EXPECT_NEAR(small.at("lhs"), 0.25 * (1 - std::exp(-0.2)), 1e-12);
  EXPECT_NEAR(small.at("rhs"), 0.5 * std::exp(-2.5), 1e-12);
  EXPECT_NEAR(small.at("lhs"), 0.04532, 1e-5);
  EXPECT_NEAR(small.at("rhs"), 0.04104, 1e-5);
  EXPECT_EQ(small.at("violated"), 1.0);
  const auto& big = r.checks[1].measured;
  EXPECT_NEAR(big.at("lhs"), 0.2162, 1e-4);
  EXPECT_NEAR(big.at("rhs"), 0.3894, 1e-4);
  EXPECT_EQ(big.at("violated"), 0.0);
  EXPECT_MM_ERROR(davies_gaffney_check(x2, pts(x2, {0}), Subset::empty(x2), t),
                  ErrorCode::kEmptySubset);
  EXPECT_MM_ERROR(davies_gaffney_check(x2, pts(x2, {0}), pts(x2, {0, 1}), t),
                  ErrorCode::kPreconditionViolated);
}

TEST(Cgy, Cycle4) {
  const Space c4 = cycle(4);
  const Subset sets[] = {pts(c4, {0}), pts(c4, {2})};
  EXPECT_NEAR(cgy_constant(c4, sets), 8.0 / std::pow(std::log(16.0), 2), 1e-12);
  EXPECT_NEAR(cgy_constant(c4, sets), 1.0406, 1e-4);
}

TEST(Cgy, ScaleInvariant) {
  for (int n : {8, 16}) {
    const Space s = cycle(n);
    const Space big = scaled(s, 4.0);
    const Subset a[] = {pts(s, {0}), pts(s, {n / 2})};
    const Subset b[] = {pts(big, {0}), pts(big, {n / 2})};
    EXPECT_NEAR(cgy_constant(s, a), cgy_constant(big, b), 1e-12);
  }
}

TEST(Cgy, Degenerate) {
  const Space x2 = two_point(1.0);
  const Subset all[] = {Subset::all(x2), Subset::all(x2)};
  EXPECT_MM_ERROR(cgy_constant(x2, all), ErrorCode::kDegenerateSets);
  const Subset one[] = {pts(x2, {0})};
  EXPECT_MM_ERROR(cgy_constant(x2, one), ErrorCode::kDegenerateSets);
  const Space c4 = cycle(4);
  const Subset overlap[] = {pts(c4, {0, 1}), pts(c4, {1, 2})};
  EXPECT_MM_ERROR(cgy_constant(c4, overlap), ErrorCode::kDegenerateSets);
}

TEST(Thm1, Cycle8) {
  const Space c8 = cycle(8);
  const Subset sets[] = {pts(c8, {0}), pts(c8, {4})};
  const double oracle = std::sqrt((2 - std::sqrt(2.0)) * 16 / std::pow(std::log(64.0), 2));
  EXPECT_NEAR(thm1_constant(c8, sets, 2), oracle, 1e-12);
  EXPECT_NEAR(thm1_constant(c8, sets, 2), 0.73612732013797, 1e-12);
  EXPECT_DOUBLE_EQ(thm1_constant(c8, sets, 1), cgy_constant(c8, sets));
  const Subset three[] = {pts(c8, {0}), pts(c8, {3}), pts(c8, {6})};
  EXPECT_MM_ERROR(thm1_constant(c8, three, 1), ErrorCode::kBadOrder);
}

TEST(Ratios, Examples) {
  const auto c4 = eigen_ratio_probe(cycle(4), 2);
  ASSERT_EQ(c4.size(), 2u);
  EXPECT_NEAR(c4[0], 1.0, 1e-12);
  EXPECT_NEAR(c4[1], 2.0, 1e-12);
  for (double r : eigen_ratio_probe(random_space(10, 6, true), 8)) EXPECT_GE(r, 1.0 - 1e-12);
  EXPECT_MM_ERROR(eigen_ratio_probe(cycle(4), 3), ErrorCode::kBadParameter);
  EXPECT_MM_ERROR(eigen_ratio_probe(cycle(4), 0), ErrorCode::kBadParameter);
}

TEST(Ratios, ZeroGap) {
  Spectrum fake;
  fake.eigenvalues = Eigen::VectorXd::Zero(4);
  fake.eigenvalues(3) = 1.0;
  fake.eigenfunctions = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_MM_ERROR(eigen_ratio_probe(fake, 2), ErrorCode::kZeroGap);
}

}  // namespace
