#include "esolab/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace esolab {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error("non-finite polynomial coefficient");
  }
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::binomial_power(double root, std::size_t degree) {
  std::vector<double> c(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) {
    // coefficient of s^k in (s + root)^degree
    c[k] = binomial_coefficient(degree, k) * int_pow(root, degree - k);
  }
  return Polynomial(std::move(c));
}

double Polynomial::evaluate(double s) const {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * s + coeffs_[i];
  return acc;
}

std::complex<double> Polynomial::evaluate(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * s + coeffs_[i];
  return acc;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (coeffs_.empty() || other.coeffs_.empty()) return Polynomial();
  std::vector<double> c(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + other.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - other.coeff(i);
  return Polynomial(std::move(c));
}

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  std::vector<double> row(n + 1, 0.0);
  row[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i; j-- > 1;) row[j] += row[j - 1];
    row[i] = 1.0;
  }
  return row[k];
}

double int_pow(double x, std::size_t k) {
  double acc = 1.0;
  for (std::size_t i = 0; i < k; ++i) acc *= x;
  return acc;
}

}  // namespace esolab
