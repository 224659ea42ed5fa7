#include "esolab/metrics.hpp"

#include <cmath>

#include "esolab/errors.hpp"

namespace esolab {

Metrics compute_metrics(const SimTrace& trace, double step_time,
                        std::pair<double, double> window, double band) {
  if (trace.rows() == 0) throw Error("metrics of an empty trace");
  const std::size_t start = trace.first_index_at(step_time);
  if (start >= trace.rows() || start + 1 >= trace.rows()) {
    throw Error("no step found at the requested time");
  }

  Metrics m;
  const double r_final = trace.r.back();
  // Amplitude actually traversed: from the last pre-step output sample.
  const double base = trace.y[start > 0 ? start - 1 : start];
  const double amplitude = r_final - base;
  if (std::abs(amplitude) < 1e-12) {
    throw Error("step amplitude too small for metrics");
  }

  double worst = 0.0;
  for (std::size_t i = start; i < trace.rows(); ++i) {
    worst = std::max(worst, (trace.y[i] - r_final) / amplitude);
  }
  m.overshoot = std::max(0.0, worst);

  // Earliest time after which every later sample stays inside the band:
  // scan backwards for the last excursion.
  const double band_abs = band * std::abs(amplitude);
  std::size_t last_outside = start;  // sentinel: settled immediately
  bool any_outside = false;
  for (std::size_t i = trace.rows(); i-- > start;) {
    if (std::abs(trace.y[i] - r_final) > band_abs) {
      last_outside = i;
      any_outside = true;
      break;
    }
  }
  if (!any_outside) {
    m.settled = true;
    m.settling_time = 0.0;
  } else if (last_outside + 1 < trace.rows()) {
    m.settled = true;
    m.settling_time = trace.t[last_outside + 1] - step_time;
  }  // else never settles inside the trace

  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < trace.rows(); ++i) {
    if (trace.t[i] < window.first || trace.t[i] > window.second) continue;
    const double e = trace.y[i] - trace.r[i];
    acc += e * e;
    ++count;
  }
  m.rms_tracking_error = count ? std::sqrt(acc / static_cast<double>(count)) : 0.0;

  for (double v : trace.u) m.peak_control = std::max(m.peak_control, std::abs(v));
  return m;
}

}  // namespace esolab
