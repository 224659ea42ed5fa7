#include "esolab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace esolab {

PlantModel PlantSpec::build() const {
  if (kind == PlantKind::two_mass) {
    return two_mass_plant(m1, m2, k, c1, c2);
  }
  return transfer_function_plant(Polynomial(numerator), Polynomial(denominator));
}

double PlantSpec::model_coefficient() const {
  if (kind == PlantKind::two_mass) {
    return -k * (m1 + m2) / (m1 * m2);
  }
  const Polynomial den(denominator);
  const std::size_t n = den.degree();
  return n >= 2 ? -den.coeff(n - 2) : 0.0;
}

void Scenario::validate() const {
  if (dt <= 0.0) throw ConfigError("sim.dt must be positive");
  if (horizon <= 0.0) throw ConfigError("sim.horizon must be positive");
  if (b0 == 0.0) throw ConfigError("controller.b0 must be nonzero");
  if (omega_c <= 0.0) throw ConfigError("controller.omega_c must be positive");
  if (omega_o <= 0.0) throw ConfigError("observer.omega_o must be positive");
  if (u_max < 0.0) throw ConfigError("controller.u_max must be >= 0");
  plant.build().validate();
  reference.validate();
  if (training_reference) {
    training_reference->validate();
    if (reference.kind != SignalKind::step && reference.kind != SignalKind::trapezoid) {
      throw ConfigError("training reference requires a step or trapezoid main reference");
    }
  }
  w1.validate();
  w2.validate();
  noise.validate();
  if (observer == EsoKind::learning) learner.validate();
}

double Scenario::reference_at(double t) const {
  if (training_reference && t < reference.start_time) {
    return eval_signal(*training_reference, t);
  }
  return eval_signal(reference, t);
}

double Scenario::observer_model_coefficient() const {
  return observer_a ? *observer_a : plant.model_coefficient();
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key " + key + ": not a number: " + value);
  }
  if (pos != value.size()) throw ConfigError("key " + key + ": trailing junk in number: " + value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw ConfigError("key " + key + ": not an unsigned integer: " + value);
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("key " + key + ": empty list entry");
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("key " + key + ": empty list");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

// Applies one key to the scenario. Returns false for unknown keys.
bool apply_key(Scenario& sc, const std::string& key, const std::string& value) {
  auto signal_field = [&](SignalSpec& spec, const std::string& field) -> bool {
    if (field == "kind") {
      spec.kind = signal_kind_from_name(value);
    } else if (field == "amplitude") {
      spec.amplitude = parse_double(key, value);
    } else if (field == "frequency") {
      spec.frequency = parse_double(key, value);
    } else if (field == "phase") {
      spec.phase = parse_double(key, value);
    } else if (field == "start_time") {
      spec.start_time = parse_double(key, value);
    } else if (field == "ramp_duration") {
      spec.ramp_duration = parse_double(key, value);
    } else if (field == "final_value") {
      spec.final_value = parse_double(key, value);
    } else {
      return false;
    }
    return true;
  };

  const auto dot = key.find('.');
  const std::string group = dot == std::string::npos ? key : key.substr(0, dot);
  const std::string field = dot == std::string::npos ? "" : key.substr(dot + 1);

  if (group == "plant") {
    if (field == "kind") {
      if (value == "two_mass") {
        sc.plant.kind = PlantKind::two_mass;
      } else if (value == "transfer_function") {
        sc.plant.kind = PlantKind::transfer_function;
      } else {
        throw ConfigError("unknown plant kind: " + value);
      }
    } else if (field == "m1") {
      sc.plant.m1 = parse_double(key, value);
    } else if (field == "m2") {
      sc.plant.m2 = parse_double(key, value);
    } else if (field == "k") {
      sc.plant.k = parse_double(key, value);
    } else if (field == "c1") {
      sc.plant.c1 = parse_double(key, value);
    } else if (field == "c2") {
      sc.plant.c2 = parse_double(key, value);
    } else if (field == "num") {
      sc.plant.numerator = parse_list(key, value);
    } else if (field == "den") {
      sc.plant.denominator = parse_list(key, value);
    } else {
      return false;
    }
    return true;
  }
  if (group == "observer") {
    if (field == "variant") {
      sc.observer = eso_kind_from_name(value);
    } else if (field == "omega_o") {
      sc.omega_o = parse_double(key, value);
    } else if (field == "a") {
      if (value == "auto") {
        sc.observer_a.reset();
      } else {
        sc.observer_a = parse_double(key, value);
      }
    } else {
      return false;
    }
    return true;
  }
  if (group == "controller") {
    if (field == "omega_c") {
      sc.omega_c = parse_double(key, value);
    } else if (field == "b0") {
      sc.b0 = parse_double(key, value);
    } else if (field == "u_max") {
      sc.u_max = parse_double(key, value);
    } else {
      return false;
    }
    return true;
  }
  if (group == "learner") {
    if (field == "alpha") {
      sc.learner.alpha = parse_double(key, value);
    } else if (field == "batch_capacity") {
      sc.learner.batch_capacity = static_cast<std::size_t>(parse_u64(key, value));
    } else if (field == "iterations_per_step") {
      sc.learner.iterations_per_step = static_cast<std::size_t>(parse_u64(key, value));
    } else if (field == "freeze_time") {
      sc.freeze_learning_at = parse_double(key, value);
    } else {
      return false;
    }
    return true;
  }
  if (group == "reference") return signal_field(sc.reference, field);
  if (group == "training_reference") {
    if (!sc.training_reference) sc.training_reference = SignalSpec{};
    return signal_field(*sc.training_reference, field);
  }
  if (group == "w1") return signal_field(sc.w1, field);
  if (group == "w2") return signal_field(sc.w2, field);
  if (group == "noise") {
    if (field == "power") {
      sc.noise.power = parse_double(key, value);
    } else if (field == "sample_time") {
      sc.noise.sample_time = parse_double(key, value);
    } else {
      return false;
    }
    return true;
  }
  if (group == "sim") {
    if (field == "dt") {
      sc.dt = parse_double(key, value);
    } else if (field == "horizon") {
      sc.horizon = parse_double(key, value);
    } else {
      return false;
    }
    return true;
  }
  if (key == "seed") {
    sc.seed = parse_u64(key, value);
    return true;
  }
  return false;
}

void serialize_signal(std::ostringstream& out, const std::string& group, const SignalSpec& s) {
  out << group << ".kind = " << signal_kind_name(s.kind) << "\n";
  out << group << ".amplitude = " << format_double(s.amplitude) << "\n";
  out << group << ".frequency = " << format_double(s.frequency) << "\n";
  out << group << ".phase = " << format_double(s.phase) << "\n";
  out << group << ".start_time = " << format_double(s.start_time) << "\n";
  out << group << ".ramp_duration = " << format_double(s.ramp_duration) << "\n";
  out << group << ".final_value = " << format_double(s.final_value) << "\n";
}

}  // namespace

std::string Scenario::serialize() const {
  std::ostringstream out;
  out << "plant.kind = " << (plant.kind == PlantKind::two_mass ? "two_mass" : "transfer_function")
      << "\n";
  if (plant.kind == PlantKind::two_mass) {
    out << "plant.m1 = " << format_double(plant.m1) << "\n";
    out << "plant.m2 = " << format_double(plant.m2) << "\n";
    out << "plant.k = " << format_double(plant.k) << "\n";
    out << "plant.c1 = " << format_double(plant.c1) << "\n";
    out << "plant.c2 = " << format_double(plant.c2) << "\n";
  } else {
    out << "plant.num = " << format_list(plant.numerator) << "\n";
    out << "plant.den = " << format_list(plant.denominator) << "\n";
  }
  out << "observer.variant = " << eso_kind_name(observer) << "\n";
  out << "observer.omega_o = " << format_double(omega_o) << "\n";
  if (observer_a) {
    out << "observer.a = " << format_double(*observer_a) << "\n";
  } else {
    out << "observer.a = auto\n";
  }
  out << "controller.omega_c = " << format_double(omega_c) << "\n";
  out << "controller.b0 = " << format_double(b0) << "\n";
  out << "controller.u_max = " << format_double(u_max) << "\n";
  if (observer == EsoKind::learning) {
    out << "learner.alpha = " << format_double(learner.alpha) << "\n";
    out << "learner.batch_capacity = " << learner.batch_capacity << "\n";
    out << "learner.iterations_per_step = " << learner.iterations_per_step << "\n";
    out << "learner.freeze_time = " << format_double(freeze_learning_at) << "\n";
  }
  serialize_signal(out, "reference", reference);
  if (training_reference) serialize_signal(out, "training_reference", *training_reference);
  serialize_signal(out, "w1", w1);
  serialize_signal(out, "w2", w2);
  out << "noise.power = " << format_double(noise.power) << "\n";
  out << "noise.sample_time = " << format_double(noise.sample_time) << "\n";
  out << "sim.dt = " << format_double(dt) << "\n";
  out << "sim.horizon = " << format_double(horizon) << "\n";
  out << "seed = " << seed << "\n";
  return out.str();
}

std::uint64_t Scenario::hash() const {
  // FNV-1a over the canonical serialization.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!apply_key(sc, key, value)) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key: " + key);
    }
  }
  sc.noise.seed = sc.seed;
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace esolab
