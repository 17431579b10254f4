#include "paim/gaussian.hpp"

#include <cmath>
#include <string>

namespace paim {

CovarianceMatrix::CovarianceMatrix(Matrix m) : m_(std::move(m)) {
  const double asym = m_.max_asymmetry();
  if (asym > kSymmetryTolerance)
    throw std::invalid_argument("covariance matrix is not symmetric (max asymmetry " +
                                std::to_string(asym) + ")");
  for (std::size_t i = 0; i < m_.dim(); ++i)
    for (std::size_t j = i + 1; j < m_.dim(); ++j) m_(j, i) = m_(i, j);
}

CovarianceMatrix CovarianceMatrix::isotropic(std::size_t dim, double variance) {
  Matrix m = Matrix::identity(dim);
  m *= variance;
  return CovarianceMatrix(std::move(m));
}

CovarianceMatrix regularize(const Matrix& scatter, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("regularize: epsilon must be positive");
  if (scatter.max_asymmetry() > kSymmetryTolerance)
    throw std::invalid_argument("regularize: scatter matrix is not symmetric");
  Matrix m = scatter;
  for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) += epsilon;
  return CovarianceMatrix(std::move(m));
}

CholeskyFactor cholesky(const CovarianceMatrix& c) {
  const std::size_t d = c.dim();
  CholeskyFactor f{Matrix(d), 0.0};
  Matrix& l = f.lower;
  for (std::size_t j = 0; j < d; ++j) {
    double pivot = c(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > kPivotFloor))
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " is " +
                                std::to_string(pivot));
    const double diag = std::sqrt(pivot);
    l(j, j) = diag;
    f.log_det_half += std::log(diag);
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = c(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / diag;
    }
  }
  return f;
}

Vector affine_transform(std::span<const double> mean, const CholeskyFactor& factor,
                        std::span<const double> z) {
  const std::size_t d = factor.dim();
  if (mean.size() != d || z.size() != d)
    throw std::invalid_argument("affine_transform: dimension mismatch");
  Vector out(mean.begin(), mean.end());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k <= i; ++k) out[i] += factor.lower(i, k) * z[k];
  return out;
}

Vector sample_gaussian(std::span<const double> mean, const CholeskyFactor& factor, RandomStream& rng) {
  Vector z(factor.dim());
  for (double& v : z) v = rng.normal();
  return affine_transform(mean, factor, z);
}

double log_gaussian_pdf(std::span<const double> x, std::span<const double> mean,
                        const CholeskyFactor& factor) {
  const std::size_t d = factor.dim();
  if (x.size() != d || mean.size() != d)
    throw std::invalid_argument("log_gaussian_pdf: dimension mismatch");
  // Forward substitution: solve lower * y = x - mean.
  double quad = 0.0;
  double y_buf[16];
  Vector y_heap;
  double* y = y_buf;
  if (d > 16) {
    y_heap.resize(d);
    y = y_heap.data();
  }
  for (std::size_t i = 0; i < d; ++i) {
    double s = x[i] - mean[i];
    for (std::size_t k = 0; k < i; ++k) s -= factor.lower(i, k) * y[k];
    y[i] = s / factor.lower(i, i);
    quad += y[i] * y[i];
  }
  constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
  return -0.5 * static_cast<double>(d) * kLog2Pi - factor.log_det_half - 0.5 * quad;
}

GaussianComponent GaussianComponent::make(Vector mean, CovarianceMatrix cov) {
  if (mean.size() != cov.dim()) throw std::invalid_argument("GaussianComponent: dimension mismatch");
  CholeskyFactor f = cholesky(cov);
  return GaussianComponent{std::move(mean), std::move(cov), std::move(f)};
}

}  // namespace paim
