#include "paim/moments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"

namespace paim {
namespace {

// Two-pass block estimator: the oracle for the running one.
struct BlockMoments {
  Vector mean;
  Matrix scatter;
};

BlockMoments block_moments(const std::vector<Vector>& xs) {
  const std::size_t d = xs.front().size();
  BlockMoments b{Vector(d, 0.0), Matrix(d)};
  for (const auto& x : xs)
    for (std::size_t i = 0; i < d; ++i) b.mean[i] += x[i];
  for (double& m : b.mean) m /= static_cast<double>(xs.size());
  for (const auto& x : xs)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) b.scatter(i, j) += (x[i] - b.mean[i]) * (x[j] - b.mean[j]);
  return b;
}

double rel_err(double a, double b, double scale) { return std::abs(a - b) / std::max(scale, 1e-300); }

void expect_matches_block(const RunningMoments& acc, const std::vector<Vector>& xs) {
  const auto b = block_moments(xs);
  double mean_scale = 0, scatter_scale = frobenius_norm(b.scatter);
  for (double m : b.mean) mean_scale = std::max(mean_scale, std::abs(m));
  for (std::size_t i = 0; i < b.mean.size(); ++i)
    EXPECT_LT(rel_err(acc.mean()[i], b.mean[i], std::max(mean_scale, 1.0)), 1e-10);
  for (std::size_t i = 0; i < b.mean.size(); ++i)
    for (std::size_t j = 0; j < b.mean.size(); ++j)
      EXPECT_LT(rel_err(acc.scatter()(i, j), b.scatter(i, j), scatter_scale), 1e-10);
}

TEST(RunningMoments, OneDimensionalValues) {
  RunningMoments acc(1);
  for (double v : {1.0, 2.0, 3.0}) acc.push(Vector{v});
  EXPECT_EQ(acc.count(), 3u);
  EXPECT_DOUBLE_EQ(acc.mean()[0], 2.0);
  EXPECT_DOUBLE_EQ(acc.scatter()(0, 0), 2.0);
  EXPECT_NEAR(acc.covariance(0.4)(0, 0), 1.4, 1e-15);
}

TEST(RunningMoments, TwoPoints) {
  RunningMoments acc(2);
  acc.push(Vector{0, 0});
  acc.push(Vector{2, 0});
  EXPECT_EQ(acc.mean(), (Vector{1, 0}));
  EXPECT_EQ(acc.scatter(), Matrix({{2, 0}, {0, 0}}));
}

TEST(RunningMoments, DegenerateCountsGiveEpsilonIdentity) {
  RunningMoments acc(2);
  EXPECT_EQ(acc.covariance(0.4).matrix(), Matrix({{0.4, 0}, {0, 0.4}}));
  EXPECT_EQ(acc.mean(), (Vector{0, 0}));
  acc.push(Vector{3, -7});
  EXPECT_EQ(acc.scatter(), Matrix(2));
  EXPECT_EQ(acc.covariance(0.4).matrix(), Matrix({{0.4, 0}, {0, 0.4}}));
}

TEST(RunningMoments, ThreePointCovariance) {
  RunningMoments acc(2);
  for (const auto& x : {Vector{0, 0}, Vector{2, 0}, Vector{0, 2}}) acc.push(x);
  const auto c = acc.covariance(0.4);
  EXPECT_NEAR(c(0, 0), 4.0 / 3.0 + 0.4, 1e-15);
  EXPECT_NEAR(c(1, 1), 4.0 / 3.0 + 0.4, 1e-15);
  EXPECT_NEAR(c(0, 1), -2.0 / 3.0, 1e-15);
  EXPECT_EQ(c(0, 1), c(1, 0));
}

TEST(RunningMoments, MatchesBlockFormulasOnRandomPoints) {
  RandomStream rng(77);
  for (std::size_t n : {2u, 100u, 1000u}) {
    for (std::size_t d : {1u, 2u, 5u}) {
      RunningMoments acc(d);
      std::vector<Vector> xs;
      for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(testing::random_vector(d, -20, 35, rng));
        acc.push(xs.back());
      }
      expect_matches_block(acc, xs);
      EXPECT_EQ(acc.scatter().max_asymmetry(), 0.0);
      EXPECT_NO_THROW(cholesky(acc.covariance(0.4)));
    }
  }
}

TEST(RunningMoments, PermutationInvariant) {
  RandomStream rng(78);
  std::vector<Vector> xs;
  for (int i = 0; i < 300; ++i) xs.push_back(testing::random_vector(3, -5, 5, rng));
  RunningMoments forward(3), reversed(3), shuffled(3);
  for (const auto& x : xs) forward.push(x);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) reversed.push(*it);
  std::vector<Vector> perm = xs;
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(9));
  for (const auto& x : perm) shuffled.push(x);
  for (const auto* other : {&reversed, &shuffled}) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(forward.mean()[i], other->mean()[i], 1e-10);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_LT(rel_err(forward.scatter()(i, j), other->scatter()(i, j), frobenius_norm(forward.scatter())), 1e-10);
  }
}

TEST(RunningMoments, RejectsDimensionMismatch) {
  RunningMoments acc(2);
  EXPECT_THROW(acc.push(Vector{1.0}), std::invalid_argument);
}

TEST(Mse, Examples) {
  const Vector truth{1, 2};
  EXPECT_EQ(mse(std::vector<Vector>{truth}, truth), 0.0);
  EXPECT_DOUBLE_EQ(mse(std::vector<Vector>{{2, 3}}, truth), 1.0);
  EXPECT_DOUBLE_EQ(mse(std::vector<Vector>{{2, 2}, {1, 3}}, truth), 0.5);
  EXPECT_THROW(mse(std::vector<Vector>{}, truth), std::invalid_argument);
}

}  // namespace
}  // namespace paim
