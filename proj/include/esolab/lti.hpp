#pragma once

#include <cstddef>
#include <vector>

#include "esolab/matrix.hpp"
#include "esolab/polynomial.hpp"

namespace esolab {

// Continuous-time SISO plant with one lumped-disturbance channel:
//   xdot = A0 x + B0 u + E0 f,   y = C0 x
struct StateSpace {
  Matrix A0;  // n x n
  Matrix B0;  // n x 1
  Matrix C0;  // 1 x n
  Matrix E0;  // n x 1

  std::size_t order() const { return A0.rows(); }
  void validate() const;
};

// Observable canonical form of a StateSpace: the top rows of Abar form a
// shift chain, the last row carries the negated characteristic-polynomial
// coefficients, Bbar = [0..0 b]^T and the output reads the first state.
struct CanonicalSystem {
  Matrix Abar;                   // n x n companion form
  double b = 0.0;                // input gain, last entry of S*B0
  std::vector<double> last_row;  // [-a0 ... -a_{n-1}]
  Matrix Ebar;                   // S*E0
  Matrix S;                      // transform, rows C0 A0^k
};

struct AssumptionReport {
  bool observable = false;
  bool no_invariant_zeros = false;
  // C0 A0^k E0 for k = 0..n-1; the disturbance reaches the output only
  // through the highest derivative iff all but the last are zero.
  std::vector<double> relative_markers;
  bool ok() const { return observable && no_invariant_zeros; }
};

// Row stack [C0; C0 A0; ...; C0 A0^{n-1}].
Matrix observability_matrix(const StateSpace& sys);

AssumptionReport check_observer_assumptions(const StateSpace& sys, double tol = 1e-9);

// Similarity transform by the observability matrix. Throws AssumptionError
// when the report above fails or when S*B0 is not confined to the last
// entry, SingularMatrixError when S cannot be inverted.
CanonicalSystem to_observable_canonical(const StateSpace& sys, double tol = 1e-9);

// Monic characteristic polynomial det(sI - M) via the Faddeev-LeVerrier
// recurrence; exact on integer matrices up to the supported size of 8.
Polynomial characteristic_polynomial(const Matrix& m);

struct FaddeevResult {
  Polynomial char_poly;
  // adj(sI - M) = sum_k adj_terms[k] * s^k, k = 0..n-1
  std::vector<Matrix> adj_terms;
};

FaddeevResult faddeev_leverrier(const Matrix& m);

// Places all eigenvalues of A - L*C at -omega_o by matching characteristic
// polynomial coefficients, which are affine in L:
//   det(sI - A + L C) = det(sI - A) + C adj(sI - A) L
// The resulting linear system is solved directly; for the structured
// observer forms in this project it is triangular with unit pivots.
// Throws UnobservableError when the pair does not determine L.
std::vector<double> place_observer_gains(const Matrix& a, const Matrix& c, double omega_o);

// Bandwidth-parameterized gains for the pure chain-of-integrators observer
// of order n: L_k = C(n+1, k) omega_o^k, the coefficients of (s+omega_o)^{n+1}.
std::vector<double> bandwidth_observer_gains(std::size_t n, double omega_o);

// Closed-form gain formulas for the single-coefficient model-based observer
// (coefficient a on the second-highest derivative), kept for cross-checking
// against place_observer_gains. The last entry is known to disagree with the
// placement result; callers that need poles exactly at -omega_o must use
// place_observer_gains.
std::vector<double> mb_closed_form_gains(double a, double omega_o);

}  // namespace esolab
