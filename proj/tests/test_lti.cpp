#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esolab/lti.hpp"
#include "esolab/noise.hpp"
#include "esolab/plant.hpp"

using namespace esolab;

namespace {

StateSpace two_mass_state_space(double m1, double m2, double k, double c1, double c2,
                                const std::vector<double>& e0) {
  const PlantModel p = two_mass_plant(m1, m2, k, c1, c2);
  return StateSpace{p.A, p.Bu, p.C, Matrix::column(e0)};
}

Matrix shift_matrix(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  return a;
}

Matrix unit_row(std::size_t n) {
  Matrix c(1, n);
  c(0, 0) = 1.0;
  return c;
}

void check_poly_close(const Polynomial& got, const Polynomial& want, double rel) {
  REQUIRE(got.degree() == want.degree());
  for (std::size_t k = 0; k <= want.degree(); ++k) {
    const double scale = std::max(std::abs(want.coeff(k)), 1e-30);
    CHECK(std::abs(got.coeff(k) - want.coeff(k)) / scale < rel);
  }
}

}  // namespace

TEST_CASE("observability matrix: single state") {
  StateSpace sys{Matrix{{0.0}}, Matrix{{1.0}}, Matrix{{1.0}}, Matrix{{1.0}}};
  const Matrix s = observability_matrix(sys);
  CHECK(s.rows() == 1);
  CHECK(s(0, 0) == 1.0);
}

TEST_CASE("observability matrix: chained integrator is identity") {
  StateSpace sys{shift_matrix(4), Matrix(4, 1), unit_row(4), Matrix(4, 1)};
  const Matrix s = observability_matrix(sys);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(s(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("observability matrix: two-mass plant row stack") {
  const StateSpace sys = two_mass_state_space(1, 1, 1, 0, 1, {0, 0, 0, 1});
  const Matrix s = observability_matrix(sys);
  const Matrix want{{0, 1, 0, 0}, {0, 0, 0, 1}, {1, -1, 0, 0}, {0, 0, 1, -1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(s(i, j) == want(i, j));

  // Independent row oracle: repeated right-multiplication of C by A.
  Matrix row = sys.C0;
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(s(k, j) == row(0, j));
    row = row * sys.A0;
  }
}

TEST_CASE("assumption report: disturbance on the second mass has an early marker") {
  // Force on m2 reaches y = x2 after two integrations, so the k=1 marker
  // cannot vanish: the chain condition genuinely fails for this channel.
  const StateSpace sys = two_mass_state_space(1, 1, 1, 0, 1, {0, 0, 0, 1});
  const AssumptionReport report = check_observer_assumptions(sys, 1e-9);
  CHECK(report.observable);
  REQUIRE(report.relative_markers.size() == 4);
  CHECK(report.relative_markers[0] == 0.0);
  CHECK(report.relative_markers[1] == 1.0);
  CHECK(report.relative_markers[2] == 0.0);
  CHECK(report.relative_markers[3] == -1.0);
  CHECK_FALSE(report.no_invariant_zeros);
}

TEST_CASE("assumption report: lumped-disturbance channel passes the chain") {
  // E0 aligned with the control channel, scaled so the transformed
  // disturbance lands on the highest derivative with unit weight.
  const StateSpace sys = two_mass_state_space(1, 1, 1, 0, 1, {0, 0, 1, 0});
  const AssumptionReport report = check_observer_assumptions(sys, 1e-9);
  CHECK(report.observable);
  CHECK(report.no_invariant_zeros);
  CHECK(report.relative_markers[0] == 0.0);
  CHECK(report.relative_markers[1] == 0.0);
  CHECK(report.relative_markers[2] == 0.0);
  CHECK(report.relative_markers[3] == 1.0);
}

TEST_CASE("assumption report: collocated disturbance fails at k=0") {
  StateSpace sys{shift_matrix(2), Matrix(2, 1), unit_row(2), Matrix::column({1, 0})};
  const AssumptionReport report = check_observer_assumptions(sys, 1e-9);
  CHECK(report.relative_markers[0] == 1.0);
  CHECK_FALSE(report.no_invariant_zeros);
}

TEST_CASE("assumption report: zero dynamics matrix is unobservable") {
  StateSpace sys{Matrix(2, 2), Matrix(2, 1), unit_row(2), Matrix::column({0, 1})};
  const AssumptionReport report = check_observer_assumptions(sys, 1e-9);
  CHECK_FALSE(report.observable);
}

TEST_CASE("canonical transform: companion input is a fixed point") {
  Matrix a = shift_matrix(3);
  a(2, 0) = -6;
  a(2, 1) = -11;
  a(2, 2) = -5;
  StateSpace sys{a, Matrix::column({0, 0, 2}), unit_row(3), Matrix::column({0, 0, 1})};
  const CanonicalSystem canon = to_observable_canonical(sys);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(canon.S(i, j) == (i == j ? 1.0 : 0.0));
      CHECK(std::abs(canon.Abar(i, j) - a(i, j)) < 1e-12);
    }
  CHECK(canon.b == 2.0);
}

TEST_CASE("canonical transform: two-mass plant") {
  const StateSpace sys = two_mass_state_space(1, 1, 1, 0, 1, {0, 0, 1, 0});
  const CanonicalSystem canon = to_observable_canonical(sys);
  // char(A0) = s^4 + 2 s^2, so the companion last row is [0, 0, -2, 0].
  CHECK(std::abs(canon.last_row[0] - 0.0) < 1e-8);
  CHECK(std::abs(canon.last_row[1] - 0.0) < 1e-8);
  CHECK(std::abs(canon.last_row[2] + 2.0) < 1e-8);
  CHECK(std::abs(canon.last_row[3] - 0.0) < 1e-8);
  CHECK(std::abs(canon.b - 1.0) < 1e-8);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(canon.Ebar(i, 0)) < 1e-8);
  CHECK(std::abs(canon.Ebar(3, 0) - 1.0) < 1e-8);
}

TEST_CASE("canonical transform: 1x1 system is its own canonical form") {
  StateSpace sys{Matrix{{-3.0}}, Matrix{{2.0}}, Matrix{{1.0}}, Matrix{{1.0}}};
  const CanonicalSystem canon = to_observable_canonical(sys);
  CHECK(canon.Abar(0, 0) == -3.0);
  CHECK(canon.b == 2.0);
}

TEST_CASE("canonical transform rejects failing assumptions") {
  const StateSpace sys = two_mass_state_space(1, 1, 1, 0, 1, {0, 0, 0, 1});
  CHECK_THROWS_AS(to_observable_canonical(sys), AssumptionError);
}

TEST_CASE("characteristic polynomial: identity and zero") {
  check_poly_close(characteristic_polynomial(Matrix::identity(2)),
                   Polynomial({1, -2, 1}), 1e-15);
  check_poly_close(characteristic_polynomial(Matrix(3, 3)), Polynomial({0, 0, 0, 1}), 1e-15);
}

TEST_CASE("characteristic polynomial: two-mass A0 via cofactor-expanded oracle") {
  const PlantModel p = two_mass_plant(1, 1, 1, 0, 1);
  // Symbolic expansion of det(sI - A0) gives s^4 + 2 s^2 for unit parameters.
  check_poly_close(characteristic_polynomial(p.A), Polynomial({0, 0, 2, 0, 1}), 1e-14);
}

TEST_CASE("characteristic polynomial: exact on integer companion matrices") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.next_u64() % 5;
    Matrix a = shift_matrix(n);
    std::vector<double> coeffs(n);
    for (std::size_t j = 0; j < n; ++j) {
      coeffs[j] = static_cast<double>(static_cast<int>(rng.next_u64() % 19) - 9);
      a(n - 1, j) = -coeffs[j];
    }
    const Polynomial poly = characteristic_polynomial(a);
    for (std::size_t j = 0; j < n; ++j) CHECK(poly.coeff(j) == coeffs[j]);
    CHECK(poly.coeff(n) == 1.0);
  }
}

TEST_CASE("observer gains: model-free structure matches bandwidth formula exactly") {
  const Matrix a = shift_matrix(5);
  const Matrix c = unit_row(5);
  const std::vector<double> placed = place_observer_gains(a, c, 10.0);
  const std::vector<double> want{50, 1000, 10000, 50000, 100000};
  REQUIRE(placed.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(placed[i] == want[i]);

  const std::vector<double> closed = bandwidth_observer_gains(4, 10.0);
  for (std::size_t i = 0; i < 5; ++i) CHECK(placed[i] == closed[i]);
}

TEST_CASE("observer gains: model-based structure with a = 0 matches model-free") {
  Matrix a = shift_matrix(5);
  const std::vector<double> placed = place_observer_gains(a, unit_row(5), 10.0);
  a(3, 2) += 0.0;
  const std::vector<double> placed0 = place_observer_gains(a, unit_row(5), 10.0);
  CHECK(placed == placed0);
}

TEST_CASE("observer gains: model-based structure, a = -2, omega 10") {
  Matrix a = shift_matrix(5);
  a(3, 2) = -2.0;
  const std::vector<double> placed = place_observer_gains(a, unit_row(5), 10.0);
  CHECK(placed[0] == doctest::Approx(50).epsilon(1e-12));
  CHECK(placed[1] == doctest::Approx(998).epsilon(1e-12));
  CHECK(placed[2] == doctest::Approx(9900).epsilon(1e-12));
  CHECK(placed[3] == doctest::Approx(48004).epsilon(1e-12));
  // The constant coefficient of (s+10)^5 pins the last gain directly.
  CHECK(placed[4] == doctest::Approx(100000).epsilon(1e-12));
}

TEST_CASE("observer gains: placement postcondition over random bandwidth and coefficient") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const double omega = 0.5 + 99.5 * rng.next_unit();
    Matrix a = shift_matrix(5);
    if (trial % 2 == 1) a(3, 2) = -10.0 + 20.0 * rng.next_unit();
    const Matrix c = unit_row(5);
    const std::vector<double> gains = place_observer_gains(a, c, omega);

    Matrix closed = a;
    for (std::size_t i = 0; i < 5; ++i) closed(i, 0) -= gains[i];
    check_poly_close(characteristic_polynomial(closed), Polynomial::binomial_power(omega, 5),
                     1e-9);
  }
}

TEST_CASE("observer gains: unobservable pair rejected") {
  const Matrix a = Matrix(3, 3);
  CHECK_THROWS_AS(place_observer_gains(a, unit_row(3), 5.0), UnobservableError);
}

TEST_CASE("bandwidth gains: low-order cases") {
  const std::vector<double> g1 = bandwidth_observer_gains(4, 1.0);
  CHECK(g1 == std::vector<double>{5, 10, 10, 5, 1});
  // (s+2)^2 = s^2 + 4s + 4
  const std::vector<double> g2 = bandwidth_observer_gains(1, 2.0);
  CHECK(g2 == std::vector<double>{4, 4});
  const Polynomial p = Polynomial::binomial_power(2.0, 2);
  CHECK(p.coeff(1) == g2[0]);
  CHECK(p.coeff(0) == g2[1]);
}

TEST_CASE("closed-form model-based gains") {
  CHECK(mb_closed_form_gains(0.0, 10.0) == std::vector<double>{50, 1000, 10000, 50000, 100000});
  CHECK(mb_closed_form_gains(-2.0, 10.0) == std::vector<double>{50, 998, 9900, 48004, 80200});
  // Plain substitution at omega = 1: [5, -2+10, -10+10, 4-20+5, 20-20+1].
  CHECK(mb_closed_form_gains(-2.0, 1.0) == std::vector<double>{5, 8, 0, -11, 1});
}

TEST_CASE("closed-form model-based gains disagree with placement on the last entry") {
  Matrix a = shift_matrix(5);
  a(3, 2) = -2.0;
  const std::vector<double> placed = place_observer_gains(a, unit_row(5), 10.0);
  const std::vector<double> closed = mb_closed_form_gains(-2.0, 10.0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(placed[i] - closed[i]) <= 1e-9 * std::abs(closed[i]));
  }
  CHECK(std::abs(placed[4] - closed[4]) > 1.0);
}

TEST_CASE("property: canonical transform of randomly transformed companion systems") {
  SplitMix64 rng(12345);
  int done = 0;
  while (done < 40) {
    const std::size_t n = 2 + rng.next_u64() % 4;
    Matrix abar = shift_matrix(n);
    for (std::size_t j = 0; j < n; ++j) abar(n - 1, j) = -4.0 + 8.0 * rng.next_unit();
    const double b = 0.5 + 2.0 * rng.next_unit();

    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = -2.0 + 4.0 * rng.next_unit();
    Matrix tinv;
    try {
      tinv = t.inverse(1e-6);
    } catch (const SingularMatrixError&) {
      continue;  // resample ill-conditioned transforms
    }

    Matrix bbar(n, 1);
    bbar(n - 1, 0) = b;
    Matrix ebar(n, 1);
    ebar(n - 1, 0) = 1.0;
    Matrix cbar = unit_row(n);

    StateSpace sys{tinv * abar * t, tinv * bbar, cbar * t, tinv * ebar};
    const AssumptionReport report = check_observer_assumptions(sys, 1e-6);
    if (!report.ok()) continue;  // rare near-singular draws
    const CanonicalSystem canon = to_observable_canonical(sys, 1e-6);

    const Matrix companion_diff = canon.Abar - abar;
    CHECK(companion_diff.inf_norm() < 1e-8 * std::max(1.0, abar.inf_norm()));
    CHECK(std::abs(canon.b - b) < 1e-8);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(std::abs(canon.Ebar(i, 0)) < 1e-8);
    CHECK(std::abs(canon.Ebar(n - 1, 0) - 1.0) < 1e-8);
    ++done;
  }
}

TEST_CASE("matrix rank thresholding") {
  Matrix a{{1, 2}, {2, 4}};
  CHECK(a.rank() == 1);
  Matrix b{{1, 2}, {2, 4.000001}};
  CHECK(b.rank(1e-9) == 2);
  CHECK(Matrix(3, 3).rank() == 0);
}
