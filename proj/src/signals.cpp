#include "esolab/signals.hpp"

#include <cmath>

namespace esolab {

void SignalSpec::validate() const {
  if (frequency < 0.0) throw ConfigError("signal frequency must be >= 0");
  if (start_time < 0.0) throw ConfigError("signal start_time must be >= 0");
  if (kind == SignalKind::trapezoid && ramp_duration <= 0.0) {
    throw ConfigError("trapezoid ramp_duration must be positive");
  }
}

double eval_signal(const SignalSpec& spec, double t) {
  switch (spec.kind) {
    case SignalKind::zero:
      return 0.0;
    case SignalKind::constant:
      return spec.amplitude;
    case SignalKind::step:
      return t < spec.start_time ? 0.0 : spec.final_value;
    case SignalKind::sinusoid:
      if (t < spec.start_time) return 0.0;
      return spec.amplitude * std::sin(spec.frequency * (t - spec.start_time) + spec.phase);
    case SignalKind::trapezoid: {
      if (t < spec.start_time) return 0.0;
      const double elapsed = t - spec.start_time;
      if (elapsed >= spec.ramp_duration) return spec.final_value;
      return spec.final_value * elapsed / spec.ramp_duration;
    }
  }
  return 0.0;
}

std::string signal_kind_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::zero: return "zero";
    case SignalKind::constant: return "constant";
    case SignalKind::step: return "step";
    case SignalKind::sinusoid: return "sinusoid";
    case SignalKind::trapezoid: return "trapezoid";
  }
  return "zero";
}

SignalKind signal_kind_from_name(const std::string& name) {
  if (name == "zero") return SignalKind::zero;
  if (name == "constant") return SignalKind::constant;
  if (name == "step") return SignalKind::step;
  if (name == "sinusoid") return SignalKind::sinusoid;
  if (name == "trapezoid") return SignalKind::trapezoid;
  throw ConfigError("unknown signal kind: " + name);
}

}  // namespace esolab
