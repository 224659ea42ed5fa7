#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace esolab {

// Time-indexed record of every loop signal, one row per control step.
// Fixed column order:
//   t, r, y, u, x1..xn, xhat1..xhatm, dfhat, fL, fhat,
//   theta_0..theta_{m+1}, cost
struct SimTrace {
  std::size_t plant_dim = 0;
  std::size_t observer_dim = 0;

  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> y;
  std::vector<double> u;
  std::vector<double> x;      // flattened, plant_dim per row
  std::vector<double> xhat;   // flattened, observer_dim per row
  std::vector<double> dfhat;
  std::vector<double> fL;
  std::vector<double> fhat;
  std::vector<double> theta;  // flattened, observer_dim + 2 per row
  std::vector<double> cost;

  // Metadata
  std::uint64_t scenario_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::string> state_labels;
  bool failed = false;
  std::string failure_reason;
  std::uint64_t clamped_steps = 0;

  std::size_t rows() const { return t.size(); }
  std::size_t theta_dim() const { return observer_dim + 2; }

  void reserve(std::size_t n);
  bool row_finite(std::size_t i) const;

  // Rows with t in [t0, t1); metadata carried over.
  SimTrace slice(double t0, double t1) const;

  // Index of the first row with t >= time; rows() when none.
  std::size_t first_index_at(double time) const;
};

// CSV with '#'-prefixed metadata lines, a header row, and reals printed
// with 17 significant digits so values round-trip bit for bit.
void export_trace(const SimTrace& trace, const std::string& path);

SimTrace import_trace(const std::string& path);

}  // namespace esolab
