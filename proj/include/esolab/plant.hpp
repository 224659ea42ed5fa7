#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "esolab/matrix.hpp"
#include "esolab/polynomial.hpp"

namespace esolab {

// Simulated continuous-time plant:
//   xdot = A x + Bu u + Bw1 w1 + Bw2 w2,   y = C x
struct PlantModel {
  Matrix A;
  Matrix Bu;
  Matrix Bw1;
  Matrix Bw2;
  Matrix C;
  std::vector<std::string> state_labels;

  std::size_t order() const { return A.rows(); }
  double output(const std::vector<double>& x) const;
  void validate() const;
};

// Two masses coupled by a spring, sliding without friction. Control u and
// disturbance w1 push m1, disturbance w2 pushes m2, the output is
// c1*x1 + c2*x2. States: positions x1, x2 then velocities x3, x4.
PlantModel two_mass_plant(double m1, double m2, double k, double c1, double c2);

// Controllable-canonical realization of a strictly proper transfer function
// (coefficients ascending, denominator monic). The disturbance channel w1
// shares the control channel; w2 is unused.
PlantModel transfer_function_plant(const Polynomial& numerator, const Polynomial& denominator);

// One classical fourth-order Runge-Kutta step with u, w1, w2 held constant.
std::vector<double> rk4_step(const PlantModel& plant, const std::vector<double>& x, double u,
                             double w1, double w2, double dt);

}  // namespace esolab
