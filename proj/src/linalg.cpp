#include "paim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paim {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(rows.size()), data_() {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw std::invalid_argument("Matrix: rows must form a square matrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::invalid_argument("Matrix: dimension mismatch in product");
  Matrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const double a = (*this)(i, k);
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("Matrix: dimension mismatch in sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double Matrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("squared_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

}  // namespace paim
