#pragma once

#include <cstddef>
#include <vector>

#include "esolab/errors.hpp"

namespace esolab {

// Regression features [xhat_1 .. xhat_n, u, 1].
using FeatureVector = std::vector<double>;

FeatureVector featurize(const std::vector<double>& xhat, double u);

// FIFO store of the most recent training triples:
//   inputs[i]          feature vector at collection
//   residuals[i]       observer residual-disturbance sample
//   learner_outputs[i] learner output for inputs[i], 0 at warmup collection,
//                      rewritten by refresh_batch_outputs each cycle
// The regression target for sample i is learner_outputs[i] + residuals[i].
class RingBatch {
 public:
  RingBatch(std::size_t capacity, std::size_t feature_dim);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return size_; }
  std::size_t feature_dim() const { return feature_dim_; }
  bool empty() const { return size_ == 0; }

  // Feature vector of the i-th stored sample in FIFO order (0 = oldest).
  const double* feature(std::size_t i) const;
  double residual(std::size_t i) const;
  double learner_output(std::size_t i) const;
  void set_learner_output(std::size_t i, double value);

  void push(const FeatureVector& feat, double residual, double learner_output);

 private:
  std::size_t slot(std::size_t i) const { return (head_ + i) % capacity_; }

  std::size_t capacity_;
  std::size_t feature_dim_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  std::vector<double> features_;
  std::vector<double> residuals_;
  std::vector<double> learner_outputs_;
};

struct LinearModel {
  std::vector<double> theta;
};

struct LearnerConfig {
  double alpha = 0.05;
  std::size_t batch_capacity = 500;
  std::size_t iterations_per_step = 1;

  // Warmup spans the first batch_capacity steps.
  std::size_t warmup() const { return batch_capacity; }
  void validate() const;
};

void push_sample(RingBatch& batch, const FeatureVector& feat, double residual,
                 double learner_output);

// J = 1/2 sum_i (theta . phi_i - (learner_output_i + residual_i))^2
double cost(const LinearModel& model, const RingBatch& batch);

// Batch gradient descent, gradient normalized by batch length:
//   theta -= alpha/len * sum_i (theta . phi_i - target_i) phi_i
// repeated iterations_per_step times. Throws DivergenceError once
// ||theta||_inf exceeds 1e12.
void gradient_step(LinearModel& model, const RingBatch& batch, const LearnerConfig& cfg);

double predict(const LinearModel& model, const FeatureVector& feat);

// learner_outputs[i] <- theta . inputs[i] for every stored sample.
void refresh_batch_outputs(const LinearModel& model, RingBatch& batch);

}  // namespace esolab
