#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "paim/gaussian.hpp"
#include "paim/linalg.hpp"

namespace paim {

// Single-pass (Welford) mean and scatter accumulator. scatter is the sum of
// outer products of deviations from the current mean, i.e.
// (count - 1) * sample covariance.
class RunningMoments {
 public:
  RunningMoments() = default;
  explicit RunningMoments(std::size_t dim) : mean_(dim, 0.0), scatter_(dim) {}

  void push(std::span<const double> x);

  std::size_t dim() const { return mean_.size(); }
  std::size_t count() const { return count_; }
  const Vector& mean() const { return mean_; }
  const Matrix& scatter() const { return scatter_; }

  // scatter / (count - 1) + epsilon I for count >= 2; epsilon I otherwise.
  CovarianceMatrix covariance(double epsilon) const;

 private:
  std::size_t count_ = 0;
  Vector mean_;
  Matrix scatter_;
};

// (1/R) sum_r (1/d) |estimate_r - truth|^2
double mse(std::span<const Vector> estimates, std::span<const double> truth);

}  // namespace paim
