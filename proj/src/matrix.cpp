#include "esolab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace esolab {

namespace {

void check_dim_cap(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (rows > Matrix::kMaxDim || cols > Matrix::kMaxDim) {
    throw DimensionError("matrix dimensions capped at 16x16");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  check_dim_cap(rows, cols);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows.begin() == rows.end() ? 0 : rows.begin()->size();
  check_dim_cap(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("ragged initializer for matrix");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix Matrix::column(const std::vector<double>& entries) {
  Matrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

Matrix Matrix::row(const std::vector<double>& entries) {
  Matrix m(1, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(0, i) = entries[i];
  return m;
}

void Matrix::check_same_shape(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("matrix shape mismatch");
  }
}

Matrix Matrix::operator+(const Matrix& other) const {
  check_same_shape(other);
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  check_same_shape(other);
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) {
    throw DimensionError("matrix product shape mismatch");
  }
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        out(i, j) += aik * other(k, j);
      }
    }
  }
  return out;
}

Matrix Matrix::operator*(double s) const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::inf_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix Matrix::inverse(double rel_tol) const {
  if (rows_ != cols_) {
    throw DimensionError("inverse requires a square matrix");
  }
  const std::size_t n = rows_;
  const double thresh = rel_tol * std::max(max_abs(), 1e-300);
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    }
    if (std::abs(a(piv, col)) <= thresh) {
      throw SingularMatrixError("matrix numerically singular");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    const double d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::size_t Matrix::rank(double rel_tol) const {
  const double scale = max_abs();
  if (scale == 0.0) return 0;
  const double thresh = rel_tol * scale;
  Matrix a = *this;
  double prev = 1.0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
    }
    if (std::abs(a(piv, c)) <= thresh) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(r, j), a(piv, j));
    }
    // Bareiss update: exact on integer input, divisions cancel.
    for (std::size_t i = r + 1; i < rows_; ++i) {
      for (std::size_t j = c + 1; j < cols_; ++j) {
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      }
      a(i, c) = 0.0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::vector<double> solve_linear(const Matrix& a, const std::vector<double>& b, double rel_tol) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw DimensionError("solve_linear shape mismatch");
  }
  const std::size_t n = a.rows();
  const double thresh = rel_tol * std::max(a.max_abs(), 1e-300);
  Matrix m = a;
  std::vector<double> rhs = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    }
    if (std::abs(m(piv, col)) <= thresh) {
      throw SingularMatrixError("singular system in solve_linear");
    }
    if (piv != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(m(col, j), m(piv, j));
      std::swap(rhs[col], rhs[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

}  // namespace esolab
