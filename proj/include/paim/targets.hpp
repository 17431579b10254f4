#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paim/gaussian.hpp"
#include "paim/linalg.hpp"

namespace paim {

// Unnormalized log density over R^d. Evaluation is pure and may be shared
// across threads.
class TargetDensity {
 public:
  using LogDensityFn = std::function<double(std::span<const double>)>;

  TargetDensity(std::string name, std::size_t dim, LogDensityFn fn);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }

  // Finite or -infinity; a NaN from the wrapped function is an error.
  double log_density(std::span<const double> x) const;

 private:
  std::string name_;
  std::size_t dim_;
  LogDensityFn fn_;
};

struct BananaParams {
  double b = 10.0;
  double eta1 = 4.0;
  double eta2 = 5.0;
  double eta3 = 5.0;

  void validate() const;
};

// -(4 - B x1 - x2^2)^2 / (2 eta1^2) - x1^2 / (2 eta2^2) - x2^2 / (2 eta3^2)
double log_banana(std::span<const double> x, const BananaParams& p);

TargetDensity make_banana_target(const BananaParams& p = {});
// Log density up to the Gaussian normalizing constant. Rejects non-PD cov.
TargetDensity make_gaussian_target(Vector mean, const CovarianceMatrix& cov);
// Weighted mixture of Gaussians, combined with log-sum-exp. Weights need not
// be normalized.
TargetDensity make_gaussian_mixture_target(std::vector<GaussianComponent> components,
                                           std::vector<double> weights);

class AllZeroMass : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Self-normalized expectation of x over a uniform tensor grid (inclusive
// endpoints, d <= 3). Weights are exp(log_density - max) so only ratios
// matter.
Vector grid_expectation(const TargetDensity& target, std::span<const double> lower,
                        std::span<const double> upper, std::size_t points_per_axis);

}  // namespace paim
