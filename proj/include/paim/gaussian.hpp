#pragma once

#include <span>
#include <stdexcept>

#include "paim/linalg.hpp"
#include "paim/random.hpp"

namespace paim {

class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPivotFloor = 1e-300;

// Symmetric d x d matrix. Construction checks symmetry to kSymmetryTolerance
// and stores the exactly symmetrized matrix.
class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;
  explicit CovarianceMatrix(Matrix m);

  static CovarianceMatrix isotropic(std::size_t dim, double variance);

  std::size_t dim() const { return m_.dim(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }

  bool operator==(const CovarianceMatrix&) const = default;

 private:
  Matrix m_;
};

struct CholeskyFactor {
  Matrix lower;
  double log_det_half = 0.0;  // sum of log diagonal of `lower`

  std::size_t dim() const { return lower.dim(); }
};

// scatter + epsilon * I.
CovarianceMatrix regularize(const Matrix& scatter, double epsilon);

// Throws NotPositiveDefinite when a pivot falls to kPivotFloor or below.
CholeskyFactor cholesky(const CovarianceMatrix& c);

// mean + lower * z for a caller-supplied standard-normal vector z.
Vector affine_transform(std::span<const double> mean, const CholeskyFactor& factor,
                        std::span<const double> z);

// Draws exactly dim() standard normals from rng.
Vector sample_gaussian(std::span<const double> mean, const CholeskyFactor& factor, RandomStream& rng);

double log_gaussian_pdf(std::span<const double> x, std::span<const double> mean,
                        const CholeskyFactor& factor);

// One Gaussian with its factorization cached.
struct GaussianComponent {
  Vector mean;
  CovarianceMatrix cov;
  CholeskyFactor factor;

  static GaussianComponent make(Vector mean, CovarianceMatrix cov);

  double log_pdf(std::span<const double> x) const { return log_gaussian_pdf(x, mean, factor); }
  Vector sample(RandomStream& rng) const { return sample_gaussian(mean, factor, rng); }
};

}  // namespace paim
