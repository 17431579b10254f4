#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace paim {

using Vector = std::vector<double>;

// Dense square matrix, row-major. Dimensions here are small (d <= ~50), so
// nothing fancier than a flat buffer is needed.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const double> data() const { return data_; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator*=(double s);

  // Largest |a_ij - a_ji|.
  double max_asymmetry() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

double frobenius_norm(const Matrix& m);
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace paim
