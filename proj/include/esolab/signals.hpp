#pragma once

#include <string>

#include "esolab/errors.hpp"

namespace esolab {

enum class SignalKind { zero, constant, step, sinusoid, trapezoid };

// Declarative scalar signal. Field use by kind:
//   zero:      -
//   constant:  amplitude
//   step:      start_time, final_value (0 before start_time)
//   sinusoid:  amplitude, frequency, phase, start_time (0 before start_time,
//              then amplitude * sin(frequency * (t - start_time) + phase))
//   trapezoid: start_time, ramp_duration, final_value (linear ramp from 0,
//              then hold)
struct SignalSpec {
  SignalKind kind = SignalKind::zero;
  double amplitude = 0.0;
  double frequency = 0.0;     // rad/s
  double phase = 0.0;         // rad
  double start_time = 0.0;    // s
  double ramp_duration = 4.0; // s
  double final_value = 0.0;

  void validate() const;
};

double eval_signal(const SignalSpec& spec, double t);

std::string signal_kind_name(SignalKind kind);
SignalKind signal_kind_from_name(const std::string& name);

}  // namespace esolab
