#include "paim/targets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace paim {

TargetDensity::TargetDensity(std::string name, std::size_t dim, LogDensityFn fn)
    : name_(std::move(name)), dim_(dim), fn_(std::move(fn)) {
  if (dim_ == 0) throw std::invalid_argument("TargetDensity: dimension must be positive");
  if (!fn_) throw std::invalid_argument("TargetDensity: empty log-density function");
}

double TargetDensity::log_density(std::span<const double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("TargetDensity: dimension mismatch");
  const double v = fn_(x);
  if (std::isnan(v)) throw std::domain_error("target '" + name_ + "' returned NaN");
  return v;
}

void BananaParams::validate() const {
  if (!(eta1 > 0.0 && eta2 > 0.0 && eta3 > 0.0))
    throw std::invalid_argument("banana: eta1, eta2, eta3 must be positive");
}

double log_banana(std::span<const double> x, const BananaParams& p) {
  const double ridge = 4.0 - p.b * x[0] - x[1] * x[1];
  return -ridge * ridge / (2.0 * p.eta1 * p.eta1) - x[0] * x[0] / (2.0 * p.eta2 * p.eta2) -
         x[1] * x[1] / (2.0 * p.eta3 * p.eta3);
}

TargetDensity make_banana_target(const BananaParams& p) {
  p.validate();
  return TargetDensity("banana", 2, [p](std::span<const double> x) { return log_banana(x, p); });
}

TargetDensity make_gaussian_target(Vector mean, const CovarianceMatrix& cov) {
  auto component = GaussianComponent::make(std::move(mean), cov);
  const std::size_t d = component.mean.size();
  // Drop the normalizing constant; only the quadratic form remains.
  const double constant = -0.5 * static_cast<double>(d) * 1.8378770664093454836 -
                          component.factor.log_det_half;
  return TargetDensity("gaussian", d, [component, constant](std::span<const double> x) {
    return component.log_pdf(x) - constant;
  });
}

TargetDensity make_gaussian_mixture_target(std::vector<GaussianComponent> components,
                                           std::vector<double> weights) {
  if (components.empty() || components.size() != weights.size())
    throw std::invalid_argument("gaussian_mixture: need one positive weight per component");
  const std::size_t d = components.front().mean.size();
  std::vector<double> log_w;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].mean.size() != d)
      throw std::invalid_argument("gaussian_mixture: components differ in dimension");
    if (!(weights[i] > 0.0)) throw std::invalid_argument("gaussian_mixture: weights must be positive");
    log_w.push_back(std::log(weights[i]));
  }
  return TargetDensity("gaussian_mixture", d,
                       [components = std::move(components), log_w](std::span<const double> x) {
                         double terms[64];
                         std::vector<double> heap;
                         double* t = terms;
                         if (components.size() > 64) {
                           heap.resize(components.size());
                           t = heap.data();
                         }
                         double top = -std::numeric_limits<double>::infinity();
                         for (std::size_t i = 0; i < components.size(); ++i) {
                           t[i] = log_w[i] + components[i].log_pdf(x);
                           top = std::max(top, t[i]);
                         }
                         if (top == -std::numeric_limits<double>::infinity()) return top;
                         double s = 0.0;
                         for (std::size_t i = 0; i < components.size(); ++i) s += std::exp(t[i] - top);
                         return top + std::log(s);
                       });
}

Vector grid_expectation(const TargetDensity& target, std::span<const double> lower,
                        std::span<const double> upper, std::size_t points_per_axis) {
  const std::size_t d = target.dim();
  if (d > 3) throw std::invalid_argument("grid_expectation: at most 3 dimensions supported");
  if (lower.size() != d || upper.size() != d)
    throw std::invalid_argument("grid_expectation: bounds dimension mismatch");
  if (points_per_axis < 2) throw std::invalid_argument("grid_expectation: need at least 2 points per axis");
  for (std::size_t i = 0; i < d; ++i)
    if (!(lower[i] < upper[i])) throw std::invalid_argument("grid_expectation: lower must be < upper");

  std::vector<Vector> axes(d, Vector(points_per_axis));
  for (std::size_t i = 0; i < d; ++i) {
    const double h = (upper[i] - lower[i]) / static_cast<double>(points_per_axis - 1);
    for (std::size_t k = 0; k < points_per_axis; ++k)
      axes[i][k] = lower[i] + h * static_cast<double>(k);
    axes[i].back() = upper[i];
  }

  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= points_per_axis;

  // Pass 1 caches log densities and finds the max; pass 2 accumulates.
  std::vector<double> logs(total);
  double top = -std::numeric_limits<double>::infinity();
  Vector x(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = d; i-- > 0;) {
      x[i] = axes[i][rem % points_per_axis];
      rem /= points_per_axis;
    }
    logs[flat] = target.log_density(x);
    top = std::max(top, logs[flat]);
  }
  if (top == -std::numeric_limits<double>::infinity())
    throw AllZeroMass("grid_expectation: every grid weight is zero; bounds miss the support");

  double mass = 0.0;
  Vector moment(d, 0.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const double w = std::exp(logs[flat] - top);
    if (w == 0.0) continue;
    mass += w;
    std::size_t rem = flat;
    for (std::size_t i = d; i-- > 0;) {
      moment[i] += w * axes[i][rem % points_per_axis];
      rem /= points_per_axis;
    }
  }
  for (double& m : moment) m /= mass;
  return moment;
}

}  // namespace paim
