#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esolab/metrics.hpp"
#include "esolab/scenario.hpp"
#include "esolab/trace.hpp"

namespace esolab {

extern const char* const kVersion;

// Runs the closed loop over the scenario horizon. Per step:
// measure -> read observer estimates -> learner batch update ->
// gradient update -> refresh stored outputs -> predict feedforward ->
// total disturbance -> control -> advance plant and observer together
// with all inputs held over the step. The learner stages are skipped for
// plain observers, and run with a zero feedforward output during the
// warmup phase while the batch fills.
//
// A divergence aborts the run and returns the partial trace with the
// failure marker set.
SimTrace run_scenario(const Scenario& scenario);

struct VariantSpec {
  std::string name;
  EsoKind kind = EsoKind::model_free;
  std::optional<double> omega_o;  // unset -> scenario value
};

struct VariantResult {
  std::string name;
  SimTrace trace;
  Metrics metrics;
  bool failed = false;
  std::string error;
};

struct CompareReport {
  std::vector<VariantResult> results;
  double step_time = 0.0;
  std::pair<double, double> window{0.0, 0.0};
};

// Runs each variant on a copy of the base scenario (identical plant,
// signals, noise seed, dt and horizon). A failing variant is reported in
// its row without aborting the others.
CompareReport compare_variants(const Scenario& base, const std::vector<VariantSpec>& variants,
                               double step_time, std::pair<double, double> window);

// Step-metrics anchor implied by the reference shape: the step start time,
// or the trapezoid ramp start.
double default_step_time(const Scenario& scenario);

}  // namespace esolab
