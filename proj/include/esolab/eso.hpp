#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "esolab/matrix.hpp"

namespace esolab {

enum class EsoKind { model_free, model_based, learning };

struct EsoVariant {
  EsoKind kind = EsoKind::model_free;
  double a = 0.0;       // retained model coefficient, model_based only
  double b0 = 1.0;      // nominal input gain
  std::size_t state_dim = 4;

  void validate() const;
};

// Extended system of order n+1: the plant states in output-derivative
// coordinates plus the total disturbance as the last state.
//   A: shift chain with the disturbance feeding the highest derivative
//      (model_based also keeps coefficient a at row n, column n-1),
//   B: b0 on the highest-derivative row, C: reads the first state,
//   L: gains placing all eigenvalues of A - L C at -omega_o.
struct AugmentedModel {
  Matrix A;
  Matrix B;
  Matrix C;
  Matrix E;
  std::vector<double> L;
  std::size_t state_dim = 0;
};

// Observer state: estimates of the n transformed plant states plus the
// residual total disturbance (everything not already fed forward).
struct EsoState {
  std::vector<double> xhat;
  double residual_disturbance = 0.0;
};

AugmentedModel build_augmented(const EsoVariant& variant, double omega_o);

// Advances
//   zdot = A z + B u + L (y - C z) + [Ebar; 0] f_feedforward
// by one step with u, y and the feedforward estimate held. The gain rows
// scale like omega_o^5, which makes the held system stiff far beyond what
// an explicit integrator resolves at practical step sizes, so propagation
// uses the exact zero-order-hold map
//   z+ = Phi z + Gamma (L y + B u + Ebar_aug f_feedforward),
//   Phi = exp((A - L C) dt),  Gamma = int_0^dt exp((A - L C) tau) dtau,
// precomputed by scaling-and-squaring. Plain observers pass
// f_feedforward = 0.
class EsoPropagator {
 public:
  EsoPropagator(const AugmentedModel& model, double dt);

  EsoState step(const EsoState& state, double u, double y, double f_feedforward) const;

  double dt() const { return dt_; }

 private:
  std::size_t state_dim_;
  double dt_;
  Matrix phi_;
  std::vector<double> gain_response_;     // Gamma * L
  std::vector<double> input_response_;    // Gamma * B
  std::vector<double> forward_response_;  // Gamma * Ebar_aug
};

// Convenience one-shot form; loops should build an EsoPropagator once.
EsoState eso_step(const AugmentedModel& model, const EsoState& state, double u, double y,
                  double f_feedforward, double dt);

inline double total_disturbance(const EsoState& state, double f_feedforward) {
  return f_feedforward + state.residual_disturbance;
}

std::string eso_kind_name(EsoKind kind);
EsoKind eso_kind_from_name(const std::string& name);

}  // namespace esolab
