#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "esolab/errors.hpp"

namespace esolab {

// Polynomial with real coefficients stored in ascending degree order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  // (s + root)^degree expanded through Pascal's triangle; exact for the
  // integer binomial coefficients involved.
  static Polynomial binomial_power(double root, std::size_t degree);

  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  double evaluate(double s) const;
  std::complex<double> evaluate(std::complex<double> s) const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;

  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

 private:
  void trim();
  std::vector<double> coeffs_;  // ascending; empty = zero polynomial
};

// Binomial coefficient via Pascal's triangle, exact for n <= 60ish.
double binomial_coefficient(std::size_t n, std::size_t k);

// x^k as a left-to-right product chain; shared so independently derived
// gain formulas land on bit-identical values.
double int_pow(double x, std::size_t k);

}  // namespace esolab
