#include "esolab/eso.hpp"

#include <array>
#include <cmath>

#include "esolab/errors.hpp"
#include "esolab/lti.hpp"

namespace esolab {

void EsoVariant::validate() const {
  if (b0 == 0.0) throw Error("nominal input gain b0 must be nonzero");
  if (state_dim < 1) throw Error("observer state dimension must be >= 1");
}

AugmentedModel build_augmented(const EsoVariant& variant, double omega_o) {
  variant.validate();
  const std::size_t n = variant.state_dim;
  AugmentedModel m;
  m.state_dim = n;
  m.A = Matrix(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) m.A(i, i + 1) = 1.0;
  if (variant.kind == EsoKind::model_based && n >= 2) {
    m.A(n - 1, n - 2) += variant.a;
  }
  m.B = Matrix(n + 1, 1);
  m.B(n - 1, 0) = variant.b0;
  m.C = Matrix(1, n + 1);
  m.C(0, 0) = 1.0;
  m.E = Matrix(n + 1, 1);
  m.E(n, 0) = 1.0;
  m.L = place_observer_gains(m.A, m.C, omega_o);
  return m;
}

namespace {

// Phi = exp(M h) and Gamma = int_0^h exp(M tau) dtau by scaling and
// squaring with a fixed-order Taylor base, using the doubling identities
// Phi_{2t} = Phi_t^2 and Gamma_{2t} = Gamma_t + Phi_t Gamma_t.
std::pair<Matrix, Matrix> zoh_exponential(const Matrix& m, double h) {
  const std::size_t n = m.rows();
  int squarings = 0;
  double norm = m.inf_norm() * h;
  while (norm > 0.5 && squarings < 60) {
    norm *= 0.5;
    ++squarings;
  }
  const double hs = h / std::ldexp(1.0, squarings);

  const Matrix x = m * hs;
  Matrix phi = Matrix::identity(n);
  Matrix gamma_sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 20; ++k) {
    term = term * x * (1.0 / static_cast<double>(k));
    phi = phi + term;
    gamma_sum = gamma_sum + term * (1.0 / static_cast<double>(k + 1));
  }
  Matrix gamma = gamma_sum * hs;
  for (int i = 0; i < squarings; ++i) {
    gamma = gamma + phi * gamma;
    phi = phi * phi;
  }
  return {phi, gamma};
}

}  // namespace

EsoPropagator::EsoPropagator(const AugmentedModel& model, double dt)
    : state_dim_(model.state_dim), dt_(dt) {
  if (dt <= 0.0) throw Error("dt must be positive");
  const std::size_t dim = state_dim_ + 1;
  Matrix closed = model.A;
  for (std::size_t i = 0; i < dim; ++i) closed(i, 0) -= model.L[i];

  auto [phi, gamma] = zoh_exponential(closed, dt);
  phi_ = std::move(phi);

  gain_response_.assign(dim, 0.0);
  input_response_.assign(dim, 0.0);
  forward_response_.assign(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      gain_response_[i] += gamma(i, j) * model.L[j];
      input_response_[i] += gamma(i, j) * model.B(j, 0);
    }
    // Feedforward enters on the highest-derivative row.
    forward_response_[i] = gamma(i, state_dim_ - 1);
  }
}

EsoState EsoPropagator::step(const EsoState& state, double u, double y,
                             double f_feedforward) const {
  const std::size_t n = state_dim_;
  if (state.xhat.size() != n) throw DimensionError("observer state length mismatch");
  if (!std::isfinite(f_feedforward)) throw DivergenceError("non-finite feedforward estimate");

  const std::size_t dim = n + 1;
  std::array<double, Matrix::kMaxDim + 1> z{};
  for (std::size_t i = 0; i < n; ++i) z[i] = state.xhat[i];
  z[n] = state.residual_disturbance;

  EsoState out;
  out.xhat.resize(n);
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = gain_response_[i] * y + input_response_[i] * u + forward_response_[i] * f_feedforward;
    for (std::size_t j = 0; j < dim; ++j) acc += phi_(i, j) * z[j];
    if (!std::isfinite(acc)) throw DivergenceError("observer state became non-finite");
    if (i < n) {
      out.xhat[i] = acc;
    } else {
      out.residual_disturbance = acc;
    }
  }
  return out;
}

EsoState eso_step(const AugmentedModel& model, const EsoState& state, double u, double y,
                  double f_feedforward, double dt) {
  return EsoPropagator(model, dt).step(state, u, y, f_feedforward);
}

std::string eso_kind_name(EsoKind kind) {
  switch (kind) {
    case EsoKind::model_free: return "model_free";
    case EsoKind::model_based: return "model_based";
    case EsoKind::learning: return "learning";
  }
  return "model_free";
}

EsoKind eso_kind_from_name(const std::string& name) {
  if (name == "model_free" || name == "mf") return EsoKind::model_free;
  if (name == "model_based" || name == "mb") return EsoKind::model_based;
  if (name == "learning" || name == "l" || name == "leso") return EsoKind::learning;
  throw ConfigError("unknown observer variant: " + name);
}

}  // namespace esolab
