#pragma once

#include <cstddef>
#include <vector>

#include "esolab/errors.hpp"

namespace esolab {

// Disturbance-rejection tracking law on the estimated derivative states:
//   u0 = K1 (r - xhat_1) - sum_{j>=2} Kj xhat_j
//   u  = (-fhat + u0) / b0
struct ControllerGains {
  std::vector<double> K;
  double omega_c = 0.0;
  double b0 = 1.0;

  void validate() const;
};

// Gains placing the ideal closed loop y^(n) = u0 at a repeated pole -omega_c:
// K_j = C(n, j-1) * omega_c^(n-j+1), the non-leading coefficients of
// (s + omega_c)^n with the constant term first.
std::vector<double> feedback_gains(double omega_c, std::size_t n);

double control_law(const ControllerGains& gains, double reference,
                   const std::vector<double>& xhat, double fhat);

}  // namespace esolab
