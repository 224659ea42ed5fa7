#pragma once

#include <limits>
#include <utility>

#include "esolab/trace.hpp"

namespace esolab {

struct Metrics {
  // Peak output excursion beyond the settled reference, as a fraction of
  // the traversed step amplitude, clamped at 0.
  double overshoot = 0.0;
  // Earliest time after the step beyond which the output stays inside the
  // band; infinity when the trace never settles.
  double settling_time = std::numeric_limits<double>::infinity();
  bool settled = false;
  double rms_tracking_error = 0.0;  // over the requested window
  double peak_control = 0.0;        // max |u| over the whole trace
};

// Step metrics against the reference's settled final value. `window` bounds
// the RMS tracking-error computation; `band` is the settling band as a
// fraction of the step amplitude (2% convention by default).
Metrics compute_metrics(const SimTrace& trace, double step_time,
                        std::pair<double, double> window, double band = 0.02);

}  // namespace esolab
