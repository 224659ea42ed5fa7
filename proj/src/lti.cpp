#include "esolab/lti.hpp"

#include <cmath>
#include <cstdio>

namespace esolab {

void StateSpace::validate() const {
  const std::size_t n = A0.rows();
  if (n < 1 || A0.cols() != n) throw DimensionError("A0 must be square, n >= 1");
  if (B0.rows() != n || B0.cols() != 1) throw DimensionError("B0 must be n x 1");
  if (C0.rows() != 1 || C0.cols() != n) throw DimensionError("C0 must be 1 x n");
  if (E0.rows() != n || E0.cols() != 1) throw DimensionError("E0 must be n x 1");
  if (!A0.all_finite() || !B0.all_finite() || !C0.all_finite() || !E0.all_finite()) {
    throw Error("non-finite state-space entry");
  }
}

Matrix observability_matrix(const StateSpace& sys) {
  sys.validate();
  const std::size_t n = sys.order();
  Matrix s(n, n);
  Matrix row = sys.C0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) s(k, j) = row(0, j);
    row = row * sys.A0;
  }
  return s;
}

AssumptionReport check_observer_assumptions(const StateSpace& sys, double tol) {
  sys.validate();
  if (tol <= 0.0) throw Error("tolerance must be positive");
  const std::size_t n = sys.order();

  AssumptionReport report;
  const Matrix obs = observability_matrix(sys);
  report.observable = obs.rank(tol) == n;

  Matrix row = sys.C0;
  report.relative_markers.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double marker = 0.0;
    for (std::size_t j = 0; j < n; ++j) marker += row(0, j) * sys.E0(j, 0);
    report.relative_markers[k] = marker;
    row = row * sys.A0;
  }

  bool chain_ok = std::abs(report.relative_markers[n - 1]) > tol;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (std::abs(report.relative_markers[k]) > tol) chain_ok = false;
  }
  report.no_invariant_zeros = chain_ok;
  return report;
}

CanonicalSystem to_observable_canonical(const StateSpace& sys, double tol) {
  const AssumptionReport report = check_observer_assumptions(sys, tol);
  if (!report.ok()) {
    throw AssumptionError(report.observable
                              ? "disturbance channel has invariant zeros"
                              : "(A0, C0) is not observable");
  }
  const std::size_t n = sys.order();
  CanonicalSystem out;
  out.S = observability_matrix(sys);
  Matrix sinv;
  try {
    sinv = out.S.inverse();
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("observability transform numerically non-invertible");
  }
  out.Abar = out.S * sys.A0 * sinv;
  out.Ebar = out.S * sys.E0;
  const Matrix bbar = out.S * sys.B0;

  const double scale = std::max(bbar.max_abs(), 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(bbar(i, 0)) > tol * scale) {
      throw AssumptionError("input does not enter through the highest derivative only");
    }
  }
  out.b = bbar(n - 1, 0);
  out.last_row.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.last_row[j] = out.Abar(n - 1, j);
  return out;
}

FaddeevResult faddeev_leverrier(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("characteristic polynomial needs a square matrix");
  const std::size_t n = m.rows();
  if (n > 8) throw DimensionError("characteristic polynomial supported up to order 8");

  FaddeevResult res;
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[n] = 1.0;
  res.adj_terms.assign(n, Matrix::identity(n));

  Matrix b = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Matrix ab = m * b;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += ab(i, i);
    const double c = -trace / static_cast<double>(k);
    coeffs[n - k] = c;
    if (k < n) {
      b = ab;
      for (std::size_t i = 0; i < n; ++i) b(i, i) += c;
      res.adj_terms[n - 1 - k] = b;
    }
  }
  res.char_poly = Polynomial(std::move(coeffs));
  return res;
}

Polynomial characteristic_polynomial(const Matrix& m) { return faddeev_leverrier(m).char_poly; }

std::vector<double> place_observer_gains(const Matrix& a, const Matrix& c, double omega_o) {
  if (a.rows() != a.cols()) throw DimensionError("A must be square");
  const std::size_t m = a.rows();
  if (c.rows() != 1 || c.cols() != m) throw DimensionError("C must be 1 x n");
  if (omega_o <= 0.0) throw Error("omega_o must be positive");

  {
    StateSpace probe{a, Matrix(m, 1), c, Matrix(m, 1)};
    if (observability_matrix(probe).rank() != m) {
      throw UnobservableError("cannot place observer poles: pair not observable");
    }
  }

  const FaddeevResult fad = faddeev_leverrier(a);
  const Polynomial target = Polynomial::binomial_power(omega_o, m);

  // Row j: coefficient of s^j of C adj(sI - A) L equals (C adj_terms[j]) . L
  Matrix coeff_rows(m, m);
  std::vector<double> rhs(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Matrix row = c * fad.adj_terms[j];
    for (std::size_t i = 0; i < m; ++i) coeff_rows(j, i) = row(0, i);
    rhs[j] = target.coeff(j) - fad.char_poly.coeff(j);
  }

  std::vector<double> gains;
  try {
    gains = solve_linear(coeff_rows, rhs);
  } catch (const SingularMatrixError&) {
    throw UnobservableError("gain equations singular: pair effectively unobservable");
  }

  // Crude conditioning estimate from the elimination scale spread.
  const double spread = coeff_rows.max_abs();
  double smallest = spread;
  for (std::size_t i = 0; i < m; ++i) {
    double row_max = 0.0;
    for (std::size_t j = 0; j < m; ++j) row_max = std::max(row_max, std::abs(coeff_rows(i, j)));
    if (row_max > 0.0) smallest = std::min(smallest, row_max);
  }
  if (smallest > 0.0 && spread / smallest > 1e12) {
    std::fprintf(stderr, "warning: observer gain equations ill-conditioned (scale spread %.3e)\n",
                 spread / smallest);
  }
  return gains;
}

std::vector<double> bandwidth_observer_gains(std::size_t n, double omega_o) {
  if (n < 1) throw Error("observer order must be >= 1");
  if (omega_o <= 0.0) throw Error("omega_o must be positive");
  std::vector<double> gains(n + 1);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    gains[k - 1] = binomial_coefficient(n + 1, k) * int_pow(omega_o, k);
  }
  return gains;
}

std::vector<double> mb_closed_form_gains(double a, double omega_o) {
  if (omega_o <= 0.0) throw Error("omega_o must be positive");
  const double w = omega_o;
  return {
      5.0 * w,
      a + 10.0 * w * w,
      5.0 * a * w + 10.0 * w * w * w,
      a * a + 10.0 * a * w * w + 5.0 * int_pow(w, 4),
      5.0 * a * a * w + 10.0 * a * int_pow(w, 3) + int_pow(w, 5),
  };
}

}  // namespace esolab
