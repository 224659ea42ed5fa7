// Command-line front end: run a scenario, compare observer variants on a
// shared scenario, or compute step metrics from an exported trace.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esolab/metrics.hpp"
#include "esolab/runner.hpp"
#include "esolab/scenario.hpp"
#include "esolab/trace.hpp"

namespace {

namespace fs = std::filesystem;

std::string default_out_dir() {
  const char* env = std::getenv("ESOLAB_OUT_DIR");
  return env && *env ? env : ".";
}

void apply_overrides(esolab::Scenario& sc, const std::optional<std::uint64_t>& seed,
                     const std::optional<double>& dt) {
  if (seed) {
    sc.seed = *seed;
    sc.noise.seed = *seed;
  }
  if (dt) sc.dt = *dt;
  sc.validate();
}

void print_metrics_row(const std::string& name, const esolab::Metrics& m) {
  std::printf("%-12s %12.6g %12.6g %14.6g %12.6g\n", name.c_str(), m.overshoot,
              m.settled ? m.settling_time : std::numeric_limits<double>::infinity(),
              m.rms_tracking_error, m.peak_control);
}

void print_metrics_header() {
  std::printf("%-12s %12s %12s %14s %12s\n", "variant", "overshoot", "settling_s", "rms_error",
              "peak_u");
}

int cmd_run(const std::string& config, const std::string& out_dir,
            const std::optional<std::uint64_t>& seed, const std::optional<double>& dt) {
  esolab::Scenario sc = esolab::load_scenario(config);
  apply_overrides(sc, seed, dt);
  const esolab::SimTrace trace = esolab::run_scenario(sc);

  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / "trace.csv").string();
  esolab::export_trace(trace, path);
  std::printf("trace: %s (%zu rows)\n", path.c_str(), trace.rows());
  if (trace.failed) {
    std::fprintf(stderr, "error: run failed: %s\n", trace.failure_reason.c_str());
    return 1;
  }
  return 0;
}

int cmd_compare(const std::string& config, const std::string& out_dir,
                const std::string& variants_arg, std::optional<double> step_time,
                std::optional<std::pair<double, double>> window,
                const std::optional<std::uint64_t>& seed, const std::optional<double>& dt) {
  esolab::Scenario sc = esolab::load_scenario(config);
  apply_overrides(sc, seed, dt);

  std::vector<esolab::VariantSpec> specs;
  std::stringstream ss(variants_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    esolab::VariantSpec spec;
    spec.name = item;
    spec.kind = esolab::eso_kind_from_name(item);
    specs.push_back(spec);
  }
  if (specs.empty()) {
    std::fprintf(stderr, "error: no variants given\n");
    return 1;
  }

  const double anchor = step_time ? *step_time : esolab::default_step_time(sc);
  const std::pair<double, double> win = window ? *window : std::make_pair(anchor, sc.horizon);
  const esolab::CompareReport report = esolab::compare_variants(sc, specs, anchor, win);

  fs::create_directories(out_dir);
  print_metrics_header();
  bool any_failed = false;
  for (const auto& result : report.results) {
    const std::string path = (fs::path(out_dir) / (result.name + ".csv")).string();
    esolab::export_trace(result.trace, path);
    if (result.failed) {
      any_failed = true;
      std::printf("%-12s FAILED: %s\n", result.name.c_str(), result.error.c_str());
    } else {
      print_metrics_row(result.name, result.metrics);
    }
  }
  if (any_failed) {
    std::fprintf(stderr, "error: one or more variants failed\n");
    return 1;
  }
  return 0;
}

int cmd_metrics(const std::string& trace_path, double step_time,
                std::optional<std::pair<double, double>> window) {
  const esolab::SimTrace trace = esolab::import_trace(trace_path);
  const std::pair<double, double> win =
      window ? *window : std::make_pair(step_time, trace.t.empty() ? step_time : trace.t.back());
  const esolab::Metrics m = esolab::compute_metrics(trace, step_time, win);
  print_metrics_header();
  print_metrics_row("trace", m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended-state-observer disturbance-rejection lab"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = default_out_dir();
  std::string trace_path;
  std::string variants = "mf,mb,l";
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  double step_time = 0.0;
  std::optional<std::vector<double>> window_arg;

  auto* run = app.add_subcommand("run", "run one scenario and export its trace");
  run->add_option("--config", config, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--dt", dt, "override the integration step (s)");

  auto* cmp = app.add_subcommand("compare", "run several observer variants on one scenario");
  cmp->add_option("--config", config, "scenario config file")->required();
  cmp->add_option("--out", out_dir, "output directory");
  cmp->add_option("--variants", variants, "comma list: mf,mb,l");
  std::optional<double> cmp_step;
  cmp->add_option("--step-time", cmp_step, "step metrics anchor (s)");
  cmp->add_option("--window", window_arg, "RMS window start,end (s)")->expected(2)->delimiter(',');
  cmp->add_option("--seed", seed, "override the scenario seed");
  cmp->add_option("--dt", dt, "override the integration step (s)");

  auto* met = app.add_subcommand("metrics", "compute step metrics from a trace CSV");
  met->add_option("--trace", trace_path, "trace CSV file")->required();
  met->add_option("--step-time", step_time, "step metrics anchor (s)")->required();
  met->add_option("--window", window_arg, "RMS window start,end (s)")->expected(2)->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  std::optional<std::pair<double, double>> window;
  if (window_arg && window_arg->size() == 2) {
    window = std::make_pair((*window_arg)[0], (*window_arg)[1]);
  }

  try {
    if (run->parsed()) return cmd_run(config, out_dir, seed, dt);
    if (cmp->parsed()) return cmd_compare(config, out_dir, variants, cmp_step, window, seed, dt);
    if (met->parsed()) return cmd_metrics(trace_path, step_time, window);
  } catch (const esolab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
