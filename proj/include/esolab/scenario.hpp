#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esolab/eso.hpp"
#include "esolab/learner.hpp"
#include "esolab/noise.hpp"
#include "esolab/plant.hpp"
#include "esolab/signals.hpp"

namespace esolab {

enum class PlantKind { two_mass, transfer_function };

struct PlantSpec {
  PlantKind kind = PlantKind::two_mass;
  // two_mass
  double m1 = 1.0;
  double m2 = 1.0;
  double k = 1.0;
  double c1 = 0.0;
  double c2 = 1.0;
  // transfer_function, ascending coefficients, monic denominator
  std::vector<double> numerator;
  std::vector<double> denominator;

  PlantModel build() const;
  // -k (m1 + m2) / (m1 m2) for the two-mass plant; for a transfer function,
  // the negated coefficient retained on the second-highest derivative.
  double model_coefficient() const;
};

// A complete closed-loop experiment. Everything needed to reproduce a run
// bit for bit lives here.
struct Scenario {
  PlantSpec plant;

  EsoKind observer = EsoKind::model_free;
  double omega_o = 10.0;
  std::optional<double> observer_a;  // unset -> derived from the plant

  double omega_c = 1.0;
  double b0 = 1.0;
  double u_max = 0.0;  // symmetric actuator clamp, 0 = off

  LearnerConfig learner;
  double freeze_learning_at = -1.0;  // s, < 0 = never

  SignalSpec reference;
  // Optional excitation active before reference.start_time (the reference
  // itself is 0 there for step/trapezoid kinds).
  std::optional<SignalSpec> training_reference;
  SignalSpec w1;
  SignalSpec w2;
  NoiseSpec noise;

  double dt = 1e-3;
  double horizon = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
  double reference_at(double t) const;
  double observer_model_coefficient() const;

  // Canonical flat key=value rendering; also the hashing basis.
  std::string serialize() const;
  std::uint64_t hash() const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace esolab
