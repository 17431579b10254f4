#include "paim/moments.hpp"

#include <stdexcept>

namespace paim {

void RunningMoments::push(std::span<const double> x) {
  const std::size_t d = mean_.size();
  if (x.size() != d) throw std::invalid_argument("RunningMoments::push: dimension mismatch");
  ++count_;
  const double n = static_cast<double>(count_);
  // delta_i * (x_j - new_mean_j) == delta_i * delta_j * (n - 1) / n; written in
  // the symmetric form so the scatter stays exactly symmetric.
  double delta_buf[16];
  Vector delta_heap;
  double* delta = delta_buf;
  if (d > 16) {
    delta_heap.resize(d);
    delta = delta_heap.data();
  }
  for (std::size_t i = 0; i < d; ++i) {
    delta[i] = x[i] - mean_[i];
    mean_[i] += delta[i] / n;
  }
  const double shrink = (n - 1.0) / n;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const double v = delta[i] * delta[j] * shrink;
      scatter_(i, j) += v;
      if (j != i) scatter_(j, i) += v;
    }
}

CovarianceMatrix RunningMoments::covariance(double epsilon) const {
  if (count_ < 2) return regularize(Matrix(dim()), epsilon);
  Matrix c = scatter_;
  c *= 1.0 / static_cast<double>(count_ - 1);
  return regularize(c, epsilon);
}

double mse(std::span<const Vector> estimates, std::span<const double> truth) {
  if (estimates.empty()) throw std::invalid_argument("mse: no estimates");
  if (truth.empty()) throw std::invalid_argument("mse: empty truth vector");
  double total = 0.0;
  for (const auto& e : estimates) total += squared_distance(e, truth) / static_cast<double>(truth.size());
  return total / static_cast<double>(estimates.size());
}

}  // namespace paim
