#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "esolab/errors.hpp"

namespace esolab {

// Small dense row-major matrix. Sizes are capped at 16x16; everything in
// this project is a state-space model of order <= 8, so the algorithms
// below (Gauss-Jordan, fraction-free elimination) are chosen for exactness
// at small scale rather than asymptotic speed.
class Matrix {
 public:
  static constexpr std::size_t kMaxDim = 16;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols);
  static Matrix column(const std::vector<double>& entries);
  static Matrix row(const std::vector<double>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }

  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator*(double s) const;

  Matrix transpose() const;

  // Gauss-Jordan with partial pivoting. Throws SingularMatrixError when a
  // pivot falls below rel_tol * max|entry|.
  Matrix inverse(double rel_tol = 1e-12) const;

  // Rank from a fraction-free (Bareiss) elimination with row pivoting;
  // a pivot counts when its magnitude exceeds rel_tol * max|entry|.
  std::size_t rank(double rel_tol = 1e-9) const;

  double max_abs() const;
  double inf_norm() const;
  bool all_finite() const;

 private:
  void check_same_shape(const Matrix& other) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Solves A x = b (A square, b one column) by Gaussian elimination with
// partial pivoting. Throws SingularMatrixError on pivot breakdown.
std::vector<double> solve_linear(const Matrix& a, const std::vector<double>& b,
                                 double rel_tol = 1e-12);

}  // namespace esolab
