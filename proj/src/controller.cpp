#include "esolab/controller.hpp"

#include "esolab/polynomial.hpp"

namespace esolab {

void ControllerGains::validate() const {
  if (b0 == 0.0) throw Error("controller b0 must be nonzero");
  if (omega_c <= 0.0) throw Error("controller omega_c must be positive");
  if (K.empty()) throw Error("controller gains empty");
}

std::vector<double> feedback_gains(double omega_c, std::size_t n) {
  if (omega_c <= 0.0) throw Error("omega_c must be positive");
  if (n < 1) throw Error("state dimension must be >= 1");
  std::vector<double> k(n);
  for (std::size_t j = 1; j <= n; ++j) {
    k[j - 1] = binomial_coefficient(n, j - 1) * int_pow(omega_c, n - j + 1);
  }
  return k;
}

double control_law(const ControllerGains& gains, double reference,
                   const std::vector<double>& xhat, double fhat) {
  if (xhat.size() != gains.K.size()) throw DimensionError("estimate length mismatch");
  double u0 = gains.K[0] * (reference - xhat[0]);
  for (std::size_t j = 1; j < gains.K.size(); ++j) u0 -= gains.K[j] * xhat[j];
  return (-fhat + u0) / gains.b0;
}

}  // namespace esolab
