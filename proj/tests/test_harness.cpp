#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "esolab/metrics.hpp"
#include "esolab/plant.hpp"
#include "esolab/runner.hpp"
#include "esolab/scenario.hpp"
#include "esolab/trace.hpp"

using namespace esolab;

namespace {

Scenario small_two_mass(EsoKind kind) {
  Scenario sc;
  sc.plant.kind = PlantKind::two_mass;
  sc.observer = kind;
  sc.omega_o = 10.0;
  sc.omega_c = 1.0;
  sc.b0 = 1.0;
  sc.reference.kind = SignalKind::sinusoid;
  sc.reference.amplitude = 1.0;
  sc.reference.frequency = 1.0;
  sc.noise.power = 1e-12;
  sc.noise.sample_time = 0.01;
  sc.dt = 1e-3;
  sc.horizon = 3.0;
  sc.seed = 11;
  sc.noise.seed = 11;
  sc.learner.batch_capacity = 100;
  return sc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# generated_at:", 0) == 0) continue;
    out << line << "\n";
  }
  return out.str();
}

const char* kPaperConfig = R"(
plant.kind = two_mass
plant.m1 = 1
plant.m2 = 1
plant.k = 1
plant.c1 = 0
plant.c2 = 1
observer.variant = learning
observer.omega_o = 10
controller.omega_c = 1
controller.b0 = 1
training_reference.kind = sinusoid
training_reference.amplitude = 1
training_reference.frequency = 1
reference.kind = step
reference.start_time = 110
reference.final_value = 1
w2.kind = sinusoid
w2.amplitude = 1
w2.frequency = 0.3141592653589793
w2.start_time = 150
noise.power = 1e-12
noise.sample_time = 0.01
sim.dt = 0.001
sim.horizon = 250
seed = 2024
)";

}  // namespace

TEST_CASE("scenario config: parse, serialize, reparse") {
  const Scenario sc = parse_scenario(kPaperConfig);
  CHECK(sc.observer == EsoKind::learning);
  CHECK(sc.omega_o == 10.0);
  CHECK(sc.reference.kind == SignalKind::step);
  CHECK(sc.reference.start_time == 110.0);
  REQUIRE(sc.training_reference.has_value());
  CHECK(sc.training_reference->kind == SignalKind::sinusoid);
  CHECK(sc.w2.start_time == 150.0);
  CHECK(sc.seed == 2024);
  CHECK(sc.noise.seed == 2024);

  // The reference hands over from the training sinusoid to the step.
  CHECK(sc.reference_at(1.5707963267948966) == doctest::Approx(1.0));
  CHECK(sc.reference_at(120.0) == 1.0);

  const Scenario again = parse_scenario(sc.serialize());
  CHECK(again.serialize() == sc.serialize());
  CHECK(again.hash() == sc.hash());
}

TEST_CASE("scenario config: unknown keys and malformed lines are errors") {
  CHECK_THROWS_AS(parse_scenario("plant.mass = 1\nsim.horizon = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("plant.m1\nsim.horizon = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("plant.m1 = abc\nsim.horizon = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("sim.horizon = -5\n"), ConfigError);
}

TEST_CASE("run_scenario: global equilibrium stays at zero") {
  Scenario sc = small_two_mass(EsoKind::model_free);
  sc.reference.kind = SignalKind::zero;
  sc.noise.power = 0.0;
  sc.horizon = 1.0;
  const SimTrace trace = run_scenario(sc);
  REQUIRE(trace.rows() == 1001);
  for (std::size_t i = 0; i < trace.rows(); ++i) {
    CHECK(trace.y[i] == 0.0);
    CHECK(trace.u[i] == 0.0);
    CHECK(trace.fhat[i] == 0.0);
  }
}

TEST_CASE("run_scenario: determinism, exact equality of repeated runs") {
  const Scenario sc = small_two_mass(EsoKind::learning);
  const SimTrace a = run_scenario(sc);
  const SimTrace b = run_scenario(sc);
  REQUIRE(a.rows() == b.rows());
  CHECK(a.y == b.y);
  CHECK(a.u == b.u);
  CHECK(a.x == b.x);
  CHECK(a.xhat == b.xhat);
  CHECK(a.theta == b.theta);
  CHECK(a.cost == b.cost);
}

TEST_CASE("run_scenario: learning with alpha forced to zero equals model-free") {
  Scenario mf = small_two_mass(EsoKind::model_free);
  Scenario le = small_two_mass(EsoKind::learning);
  le.learner.alpha = 0.0;
  const SimTrace a = run_scenario(mf);
  const SimTrace b = run_scenario(le);
  REQUIRE(a.rows() == b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    CHECK(a.y[i] == b.y[i]);
    CHECK(a.u[i] == b.u[i]);
    CHECK(a.fhat[i] == b.fhat[i]);
    CHECK(b.fL[i] == 0.0);
  }
}

TEST_CASE("run_scenario: warmup keeps the learner output at exactly zero") {
  Scenario sc = small_two_mass(EsoKind::learning);
  sc.learner.batch_capacity = 250;
  const SimTrace trace = run_scenario(sc);
  for (std::size_t i = 0; i < 250; ++i) CHECK(trace.fL[i] == 0.0);
  bool any_nonzero = false;
  for (std::size_t i = 250; i < trace.rows(); ++i) any_nonzero |= trace.fL[i] != 0.0;
  CHECK(any_nonzero);
}

TEST_CASE("trace export: round-trip is bit exact, reruns are byte identical") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "esolab_test_traces";
  fs::create_directories(dir);

  Scenario sc = small_two_mass(EsoKind::learning);
  sc.horizon = 1.0;
  const SimTrace trace = run_scenario(sc);
  const std::string p1 = (dir / "a.csv").string();
  const std::string p2 = (dir / "b.csv").string();
  export_trace(trace, p1);

  const SimTrace back = import_trace(p1);
  REQUIRE(back.rows() == trace.rows());
  CHECK(back.y == trace.y);
  CHECK(back.u == trace.u);
  CHECK(back.x == trace.x);
  CHECK(back.theta == trace.theta);
  CHECK(back.seed == trace.seed);
  CHECK(back.scenario_hash == trace.scenario_hash);

  const SimTrace rerun = run_scenario(sc);
  export_trace(rerun, p2);
  CHECK(strip_timestamp(read_file(p1)) == strip_timestamp(read_file(p2)));

  fs::remove_all(dir);
}

TEST_CASE("trace export: empty trace still writes metadata and header") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "esolab_empty_trace";
  fs::create_directories(dir);
  SimTrace empty;
  empty.plant_dim = 4;
  empty.observer_dim = 4;
  empty.version = kVersion;
  const std::string path = (dir / "empty.csv").string();
  export_trace(empty, path);
  const SimTrace back = import_trace(path);
  CHECK(back.rows() == 0);
  CHECK(back.plant_dim == 4);
  fs::remove_all(dir);
}

TEST_CASE("metrics: instant step settles immediately") {
  SimTrace trace;
  trace.plant_dim = 0;
  trace.observer_dim = 0;
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.1 * i;
    trace.t.push_back(t);
    trace.r.push_back(t >= 1.0 ? 1.0 : 0.0);
    trace.y.push_back(t >= 1.0 ? 1.0 : 0.0);
    trace.u.push_back(0.0);
    trace.dfhat.push_back(0);
    trace.fL.push_back(0);
    trace.fhat.push_back(0);
    trace.theta.push_back(0);
    trace.theta.push_back(0);
    trace.cost.push_back(0);
  }
  const Metrics m = compute_metrics(trace, 1.0, {1.0, 10.0});
  CHECK(m.overshoot == 0.0);
  CHECK(m.settled);
  CHECK(m.settling_time == 0.0);
}

TEST_CASE("metrics: underdamped second-order response matches the closed form") {
  // y'' + 2 zeta wn y' + wn^2 y = wn^2 r, zeta = 0.5: peak overshoot
  // exp(-pi zeta / sqrt(1 - zeta^2)) = 0.16304.
  PlantModel p;
  p.A = Matrix{{0, 1}, {-1, -1}};
  p.Bu = Matrix::column({0, 1});
  p.Bw1 = Matrix(2, 1);
  p.Bw2 = Matrix(2, 1);
  p.C = Matrix::row({1, 0});

  SimTrace trace;
  trace.plant_dim = 0;
  trace.observer_dim = 0;
  std::vector<double> x{0, 0};
  const double dt = 1e-3;
  for (int i = 0; i <= 30000; ++i) {
    const double t = i * dt;
    trace.t.push_back(t);
    trace.r.push_back(1.0);
    trace.y.push_back(x[0]);
    trace.u.push_back(1.0);
    trace.dfhat.push_back(0);
    trace.fL.push_back(0);
    trace.fhat.push_back(0);
    trace.theta.push_back(0);
    trace.theta.push_back(0);
    trace.cost.push_back(0);
    x = rk4_step(p, x, 1.0, 0, 0, dt);
  }
  const Metrics m = compute_metrics(trace, 0.0, {0.0, 30.0});
  CHECK(std::abs(m.overshoot - 0.16304) / 0.16304 < 0.01);
  CHECK(m.settled);

  // Settling time is monotone non-increasing as the band widens.
  double prev = 1e300;
  for (double band : {0.005, 0.01, 0.02, 0.05, 0.1}) {
    const Metrics mb = compute_metrics(trace, 0.0, {0.0, 30.0}, band);
    CHECK(mb.settling_time <= prev + 1e-12);
    prev = mb.settling_time;
  }
}

TEST_CASE("metrics: missing step is an error") {
  SimTrace trace;
  trace.plant_dim = 0;
  trace.observer_dim = 0;
  trace.t = {0.0, 0.1};
  trace.r = {0.0, 0.0};
  trace.y = {0.0, 0.0};
  trace.u = {0.0, 0.0};
  trace.dfhat = {0, 0};
  trace.fL = {0, 0};
  trace.fhat = {0, 0};
  trace.theta = {0, 0, 0, 0};
  trace.cost = {0, 0};
  CHECK_THROWS(compute_metrics(trace, 5.0, {0.0, 1.0}));
}

TEST_CASE("compare_variants: single variant equals its own metrics, failures isolated") {
  Scenario sc = small_two_mass(EsoKind::model_free);
  sc.reference.kind = SignalKind::step;
  sc.reference.start_time = 0.5;
  sc.reference.final_value = 1.0;
  sc.horizon = 20.0;

  const std::vector<VariantSpec> specs{{"mf", EsoKind::model_free, {}},
                                       {"mb", EsoKind::model_based, {}}};
  const CompareReport report = compare_variants(sc, specs, 0.5, {0.5, 20.0});
  REQUIRE(report.results.size() == 2);
  CHECK_FALSE(report.results[0].failed);
  CHECK_FALSE(report.results[1].failed);

  Scenario direct = sc;
  direct.observer = EsoKind::model_free;
  const Metrics m = compute_metrics(run_scenario(direct), 0.5, {0.5, 20.0});
  CHECK(report.results[0].metrics.overshoot == m.overshoot);
  CHECK(report.results[0].metrics.settling_time == m.settling_time);
  CHECK(report.results[0].metrics.rms_tracking_error == m.rms_tracking_error);
}

TEST_CASE("trace slice keeps rows in the half-open window") {
  Scenario sc = small_two_mass(EsoKind::model_free);
  sc.horizon = 1.0;
  const SimTrace trace = run_scenario(sc);
  const SimTrace cut = trace.slice(0.25, 0.75);
  REQUIRE(cut.rows() > 0);
  CHECK(cut.t.front() >= 0.25);
  CHECK(cut.t.back() < 0.75);
  CHECK(cut.plant_dim == trace.plant_dim);
}
