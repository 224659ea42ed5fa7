#include "esolab/plant.hpp"

#include <array>
#include <cmath>

#include "esolab/errors.hpp"

namespace esolab {

void PlantModel::validate() const {
  const std::size_t n = A.rows();
  if (n < 1 || A.cols() != n) throw DimensionError("plant A must be square");
  if (Bu.rows() != n || Bu.cols() != 1) throw DimensionError("plant Bu must be n x 1");
  if (Bw1.rows() != n || Bw1.cols() != 1) throw DimensionError("plant Bw1 must be n x 1");
  if (Bw2.rows() != n || Bw2.cols() != 1) throw DimensionError("plant Bw2 must be n x 1");
  if (C.rows() != 1 || C.cols() != n) throw DimensionError("plant C must be 1 x n");
}

double PlantModel::output(const std::vector<double>& x) const {
  double y = 0.0;
  for (std::size_t j = 0; j < C.cols(); ++j) y += C(0, j) * x[j];
  return y;
}

PlantModel two_mass_plant(double m1, double m2, double k, double c1, double c2) {
  if (m1 <= 0.0 || m2 <= 0.0 || k <= 0.0) {
    throw Error("two-mass plant requires m1, m2, k > 0");
  }
  PlantModel p;
  p.A = Matrix{{0.0, 0.0, 1.0, 0.0},
               {0.0, 0.0, 0.0, 1.0},
               {-k / m1, k / m1, 0.0, 0.0},
               {k / m2, -k / m2, 0.0, 0.0}};
  p.Bu = Matrix::column({0.0, 0.0, 1.0 / m1, 0.0});
  p.Bw1 = p.Bu;
  p.Bw2 = Matrix::column({0.0, 0.0, 0.0, 1.0 / m2});
  p.C = Matrix::row({c1, c2, 0.0, 0.0});
  p.state_labels = {"m", "m", "m/s", "m/s"};
  return p;
}

PlantModel transfer_function_plant(const Polynomial& numerator, const Polynomial& denominator) {
  const std::size_t n = denominator.degree();
  if (n < 1 || numerator.coeffs().empty() || numerator.degree() >= n) {
    throw Error("transfer function must be strictly proper");
  }
  if (n > 8) throw Error("transfer function order supported up to 8");
  if (denominator.coeff(n) != 1.0) throw Error("denominator must be monic");

  PlantModel p;
  p.A = Matrix(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) p.A(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < n; ++j) p.A(n - 1, j) = -denominator.coeff(j);
  Matrix b(n, 1);
  b(n - 1, 0) = 1.0;
  p.Bu = b;
  p.Bw1 = b;
  p.Bw2 = Matrix(n, 1);
  Matrix c(1, n);
  for (std::size_t j = 0; j < n; ++j) c(0, j) = numerator.coeff(j);
  p.C = c;
  p.state_labels.assign(n, "");
  return p;
}

namespace {

// dx = A x + Bu u + Bw1 w1 + Bw2 w2, written without allocation.
inline void plant_deriv(const PlantModel& p, const double* x, double u, double w1, double w2,
                        double* dx) {
  const std::size_t n = p.A.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = p.Bu(i, 0) * u + p.Bw1(i, 0) * w1 + p.Bw2(i, 0) * w2;
    for (std::size_t j = 0; j < n; ++j) acc += p.A(i, j) * x[j];
    dx[i] = acc;
  }
}

}  // namespace

std::vector<double> rk4_step(const PlantModel& plant, const std::vector<double>& x, double u,
                             double w1, double w2, double dt) {
  if (dt <= 0.0) throw Error("dt must be positive");
  const std::size_t n = plant.order();
  if (x.size() != n) throw DimensionError("state length mismatch");

  std::array<double, Matrix::kMaxDim> k1{}, k2{}, k3{}, k4{}, tmp{};
  plant_deriv(plant, x.data(), u, w1, w2, k1.data());
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
  plant_deriv(plant, tmp.data(), u, w1, w2, k2.data());
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
  plant_deriv(plant, tmp.data(), u, w1, w2, k3.data());
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
  plant_deriv(plant, tmp.data(), u, w1, w2, k4.data());

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(out[i])) throw DivergenceError("plant state became non-finite");
  }
  return out;
}

}  // namespace esolab
