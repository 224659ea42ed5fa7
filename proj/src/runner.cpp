#include "esolab/runner.hpp"

#include <cmath>

#include "esolab/controller.hpp"
#include "esolab/eso.hpp"
#include "esolab/learner.hpp"
#include "esolab/noise.hpp"

namespace esolab {

const char* const kVersion = "esolab 0.1.0";

SimTrace run_scenario(const Scenario& scenario) {
  scenario.validate();

  const PlantModel plant = scenario.plant.build();
  const std::size_t n = plant.order();

  EsoVariant variant;
  variant.kind = scenario.observer;
  variant.b0 = scenario.b0;
  variant.state_dim = n;
  if (scenario.observer == EsoKind::model_based) {
    variant.a = scenario.observer_model_coefficient();
  }
  const AugmentedModel observer = build_augmented(variant, scenario.omega_o);
  const EsoPropagator propagator(observer, scenario.dt);

  ControllerGains gains;
  gains.K = feedback_gains(scenario.omega_c, n);
  gains.omega_c = scenario.omega_c;
  gains.b0 = scenario.b0;

  const bool learning = scenario.observer == EsoKind::learning;
  const std::size_t feature_dim = n + 2;
  RingBatch batch(learning ? scenario.learner.batch_capacity : 1, feature_dim);
  LinearModel model{std::vector<double>(feature_dim, 0.0)};
  const std::size_t warmup = scenario.learner.warmup();

  NoiseGenerator noise(scenario.noise, scenario.dt);

  SimTrace trace;
  trace.plant_dim = n;
  trace.observer_dim = n;
  trace.scenario_hash = scenario.hash();
  trace.seed = scenario.seed;
  trace.version = kVersion;
  trace.state_labels = plant.state_labels;

  const std::size_t steps = static_cast<std::size_t>(std::llround(scenario.horizon / scenario.dt));
  trace.reserve(steps + 1);

  std::vector<double> x(n, 0.0);
  EsoState est;
  est.xhat.assign(n, 0.0);
  double u_held = 0.0;
  double fl_held = 0.0;

  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * scenario.dt;
    const double ref = scenario.reference_at(t);
    const double y = plant.output(x) + noise.sample(k);

    double fl = 0.0;
    double step_cost = 0.0;
    try {
      if (learning) {
        const FeatureVector feat = featurize(est.xhat, u_held);
        push_sample(batch, feat, est.residual_disturbance, fl_held);
        if (k >= warmup) {
          const bool frozen = scenario.freeze_learning_at >= 0.0 && t >= scenario.freeze_learning_at;
          if (!frozen) {
            gradient_step(model, batch, scenario.learner);
            refresh_batch_outputs(model, batch);
          }
          fl = predict(model, feat);
        }
        step_cost = cost(model, batch);
      }

      const double fhat = total_disturbance(est, fl);
      // The model-based observer keeps coefficient a inside its model, so
      // its residual excludes a*ydd. The control law must cancel that
      // retained term as well for the loop to collapse to y^(n) = u0.
      const double model_term =
          (scenario.observer == EsoKind::model_based && n >= 2) ? variant.a * est.xhat[n - 2]
                                                                : 0.0;
      double u = control_law(gains, ref, est.xhat, fhat + model_term);
      if (scenario.u_max > 0.0 && std::abs(u) > scenario.u_max) {
        u = u > 0.0 ? scenario.u_max : -scenario.u_max;
        ++trace.clamped_steps;
      }

      trace.t.push_back(t);
      trace.r.push_back(ref);
      trace.y.push_back(y);
      trace.u.push_back(u);
      trace.x.insert(trace.x.end(), x.begin(), x.end());
      trace.xhat.insert(trace.xhat.end(), est.xhat.begin(), est.xhat.end());
      trace.dfhat.push_back(est.residual_disturbance);
      trace.fL.push_back(fl);
      trace.fhat.push_back(fhat);
      trace.theta.insert(trace.theta.end(), model.theta.begin(), model.theta.end());
      trace.cost.push_back(step_cost);

      if (!trace.row_finite(trace.rows() - 1)) {
        trace.failed = true;
        trace.failure_reason = "non-finite signal at t=" + std::to_string(t);
        break;
      }
      if (k == steps) break;

      // Advance both ODEs over [t, t+dt] with all inputs held.
      est = propagator.step(est, u, y, fl);
      x = rk4_step(plant, x, u, eval_signal(scenario.w1, t), eval_signal(scenario.w2, t),
                   scenario.dt);
      u_held = u;
      fl_held = fl;
    } catch (const DivergenceError& e) {
      trace.failed = true;
      trace.failure_reason = std::string(e.what()) + " at t=" + std::to_string(t);
      break;
    }
  }
  return trace;
}

CompareReport compare_variants(const Scenario& base, const std::vector<VariantSpec>& variants,
                               double step_time, std::pair<double, double> window) {
  CompareReport report;
  report.step_time = step_time;
  report.window = window;
  for (const auto& spec : variants) {
    VariantResult result;
    result.name = spec.name;
    Scenario sc = base;
    sc.observer = spec.kind;
    if (spec.omega_o) sc.omega_o = *spec.omega_o;
    try {
      result.trace = run_scenario(sc);
      if (result.trace.failed) {
        result.failed = true;
        result.error = result.trace.failure_reason;
      } else {
        result.metrics = compute_metrics(result.trace, step_time, window);
      }
    } catch (const Error& e) {
      result.failed = true;
      result.error = e.what();
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

double default_step_time(const Scenario& scenario) {
  return scenario.reference.start_time;
}

}  // namespace esolab
