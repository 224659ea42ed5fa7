#include "esolab/trace.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "esolab/errors.hpp"

namespace esolab {

void SimTrace::reserve(std::size_t n) {
  t.reserve(n);
  r.reserve(n);
  y.reserve(n);
  u.reserve(n);
  x.reserve(n * plant_dim);
  xhat.reserve(n * observer_dim);
  dfhat.reserve(n);
  fL.reserve(n);
  fhat.reserve(n);
  theta.reserve(n * theta_dim());
  cost.reserve(n);
}

bool SimTrace::row_finite(std::size_t i) const {
  if (!std::isfinite(t[i]) || !std::isfinite(r[i]) || !std::isfinite(y[i]) ||
      !std::isfinite(u[i]) || !std::isfinite(dfhat[i]) || !std::isfinite(fL[i]) ||
      !std::isfinite(fhat[i]) || !std::isfinite(cost[i])) {
    return false;
  }
  for (std::size_t j = 0; j < plant_dim; ++j) {
    if (!std::isfinite(x[i * plant_dim + j])) return false;
  }
  for (std::size_t j = 0; j < observer_dim; ++j) {
    if (!std::isfinite(xhat[i * observer_dim + j])) return false;
  }
  for (std::size_t j = 0; j < theta_dim(); ++j) {
    if (!std::isfinite(theta[i * theta_dim() + j])) return false;
  }
  return true;
}

std::size_t SimTrace::first_index_at(double time) const {
  for (std::size_t i = 0; i < rows(); ++i) {
    if (t[i] >= time) return i;
  }
  return rows();
}

SimTrace SimTrace::slice(double t0, double t1) const {
  SimTrace out;
  out.plant_dim = plant_dim;
  out.observer_dim = observer_dim;
  out.scenario_hash = scenario_hash;
  out.seed = seed;
  out.version = version;
  out.state_labels = state_labels;
  out.failed = failed;
  out.failure_reason = failure_reason;
  out.clamped_steps = clamped_steps;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (t[i] < t0 || t[i] >= t1) continue;
    out.t.push_back(t[i]);
    out.r.push_back(r[i]);
    out.y.push_back(y[i]);
    out.u.push_back(u[i]);
    for (std::size_t j = 0; j < plant_dim; ++j) out.x.push_back(x[i * plant_dim + j]);
    for (std::size_t j = 0; j < observer_dim; ++j) out.xhat.push_back(xhat[i * observer_dim + j]);
    out.dfhat.push_back(dfhat[i]);
    out.fL.push_back(fL[i]);
    out.fhat.push_back(fhat[i]);
    for (std::size_t j = 0; j < theta_dim(); ++j) out.theta.push_back(theta[i * theta_dim() + j]);
    out.cost.push_back(cost[i]);
  }
  return out;
}

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void export_trace(const SimTrace& trace, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open trace file for writing: " + path);

  std::fprintf(f, "# esolab trace v1\n");
  std::fprintf(f, "# version: %s\n", trace.version.c_str());
  std::fprintf(f, "# scenario_hash: %016" PRIx64 "\n", trace.scenario_hash);
  std::fprintf(f, "# seed: %" PRIu64 "\n", trace.seed);
  std::fprintf(f, "# generated_at: %s\n", utc_timestamp().c_str());
  std::fprintf(f, "# plant_dim: %zu\n", trace.plant_dim);
  std::fprintf(f, "# observer_dim: %zu\n", trace.observer_dim);
  if (!trace.state_labels.empty()) {
    std::fprintf(f, "# state_labels:");
    for (const auto& l : trace.state_labels) std::fprintf(f, " %s", l.empty() ? "-" : l.c_str());
    std::fprintf(f, "\n");
  }
  std::fprintf(f, "# clamped_steps: %" PRIu64 "\n", trace.clamped_steps);
  if (trace.failed) {
    std::fprintf(f, "# status: failed %s\n", trace.failure_reason.c_str());
  } else {
    std::fprintf(f, "# status: ok\n");
  }

  std::fprintf(f, "t,r,y,u");
  for (std::size_t j = 0; j < trace.plant_dim; ++j) std::fprintf(f, ",x%zu", j + 1);
  for (std::size_t j = 0; j < trace.observer_dim; ++j) std::fprintf(f, ",xhat%zu", j + 1);
  std::fprintf(f, ",dfhat,fL,fhat");
  for (std::size_t j = 0; j < trace.theta_dim(); ++j) std::fprintf(f, ",theta_%zu", j);
  std::fprintf(f, ",cost\n");

  for (std::size_t i = 0; i < trace.rows(); ++i) {
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g", trace.t[i], trace.r[i], trace.y[i], trace.u[i]);
    for (std::size_t j = 0; j < trace.plant_dim; ++j) {
      std::fprintf(f, ",%.17g", trace.x[i * trace.plant_dim + j]);
    }
    for (std::size_t j = 0; j < trace.observer_dim; ++j) {
      std::fprintf(f, ",%.17g", trace.xhat[i * trace.observer_dim + j]);
    }
    std::fprintf(f, ",%.17g,%.17g,%.17g", trace.dfhat[i], trace.fL[i], trace.fhat[i]);
    for (std::size_t j = 0; j < trace.theta_dim(); ++j) {
      std::fprintf(f, ",%.17g", trace.theta[i * trace.theta_dim() + j]);
    }
    std::fprintf(f, ",%.17g\n", trace.cost[i]);
  }
  if (std::fclose(f) != 0) throw IoError("error closing trace file: " + path);
}

SimTrace import_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file: " + path);

  SimTrace trace;
  std::string line;
  bool saw_header = false;
  std::size_t ncols = 0;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string key;
      meta >> key;
      if (key == "seed:") meta >> trace.seed;
      if (key == "scenario_hash:") {
        std::string hex;
        meta >> hex;
        trace.scenario_hash = std::strtoull(hex.c_str(), nullptr, 16);
      }
      if (key == "version:") {
        std::string rest;
        std::getline(meta, rest);
        while (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
        trace.version = rest;
      }
      if (key == "status:") {
        std::string status;
        meta >> status;
        trace.failed = status == "failed";
        if (trace.failed) std::getline(meta, trace.failure_reason);
      }
      if (key == "clamped_steps:") meta >> trace.clamped_steps;
      continue;
    }
    if (!saw_header) {
      // Infer dimensions from the header columns.
      std::stringstream ss(line);
      std::string col;
      std::size_t nx = 0, nxhat = 0, ntheta = 0;
      ncols = 0;
      while (std::getline(ss, col, ',')) {
        ++ncols;
        if (col.rfind("xhat", 0) == 0) {
          ++nxhat;
        } else if (col.rfind("x", 0) == 0 && col != "x") {
          ++nx;
        } else if (col.rfind("theta_", 0) == 0) {
          ++ntheta;
        }
      }
      trace.plant_dim = nx;
      trace.observer_dim = nxhat;
      if (ntheta != trace.theta_dim()) {
        throw IoError("trace header theta columns inconsistent with observer dimension");
      }
      saw_header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    row.reserve(ncols);
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != ncols) throw IoError("trace row width mismatch in " + path);
    std::size_t c = 0;
    trace.t.push_back(row[c++]);
    trace.r.push_back(row[c++]);
    trace.y.push_back(row[c++]);
    trace.u.push_back(row[c++]);
    for (std::size_t j = 0; j < trace.plant_dim; ++j) trace.x.push_back(row[c++]);
    for (std::size_t j = 0; j < trace.observer_dim; ++j) trace.xhat.push_back(row[c++]);
    trace.dfhat.push_back(row[c++]);
    trace.fL.push_back(row[c++]);
    trace.fhat.push_back(row[c++]);
    for (std::size_t j = 0; j < trace.theta_dim(); ++j) trace.theta.push_back(row[c++]);
    trace.cost.push_back(row[c++]);
  }
  if (!saw_header) throw IoError("trace file has no header: " + path);
  return trace;
}

}  // namespace esolab
