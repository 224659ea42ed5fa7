#include "esolab/learner.hpp"

#include <cmath>
#include <cstring>

namespace esolab {

FeatureVector featurize(const std::vector<double>& xhat, double u) {
  FeatureVector feat;
  feat.reserve(xhat.size() + 2);
  feat.insert(feat.end(), xhat.begin(), xhat.end());
  feat.push_back(u);
  feat.push_back(1.0);
  return feat;
}

RingBatch::RingBatch(std::size_t capacity, std::size_t feature_dim)
    : capacity_(capacity), feature_dim_(feature_dim) {
  if (capacity_ < 1) throw Error("batch capacity must be >= 1");
  if (feature_dim_ < 2) throw Error("feature dimension must be >= 2");
  features_.resize(capacity_ * feature_dim_, 0.0);
  residuals_.resize(capacity_, 0.0);
  learner_outputs_.resize(capacity_, 0.0);
}

const double* RingBatch::feature(std::size_t i) const {
  return features_.data() + slot(i) * feature_dim_;
}

double RingBatch::residual(std::size_t i) const { return residuals_[slot(i)]; }

double RingBatch::learner_output(std::size_t i) const { return learner_outputs_[slot(i)]; }

void RingBatch::set_learner_output(std::size_t i, double value) {
  learner_outputs_[slot(i)] = value;
}

void RingBatch::push(const FeatureVector& feat, double residual, double learner_output) {
  if (feat.size() != feature_dim_) throw DimensionError("feature length mismatch");
  std::size_t target;
  if (size_ < capacity_) {
    target = slot(size_);
    ++size_;
  } else {
    target = head_;  // evict oldest
    head_ = (head_ + 1) % capacity_;
  }
  std::memcpy(features_.data() + target * feature_dim_, feat.data(),
              feature_dim_ * sizeof(double));
  residuals_[target] = residual;
  learner_outputs_[target] = learner_output;
}

void LearnerConfig::validate() const {
  // alpha = 0 is allowed: it disables adaptation, which the equivalence
  // checks against the plain observer rely on.
  if (alpha < 0.0) throw ConfigError("learning rate must be >= 0");
  if (batch_capacity < 1) throw ConfigError("batch capacity must be >= 1");
  if (iterations_per_step < 1) throw ConfigError("iterations_per_step must be >= 1");
}

void push_sample(RingBatch& batch, const FeatureVector& feat, double residual,
                 double learner_output) {
  batch.push(feat, residual, learner_output);
}

namespace {

inline double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double cost(const LinearModel& model, const RingBatch& batch) {
  if (batch.empty()) throw Error("cost of an empty batch");
  if (model.theta.size() != batch.feature_dim()) throw DimensionError("theta length mismatch");
  const std::size_t dim = batch.feature_dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double err =
        dot(model.theta.data(), batch.feature(i), dim) - (batch.learner_output(i) + batch.residual(i));
    acc += err * err;
  }
  return 0.5 * acc;
}

void gradient_step(LinearModel& model, const RingBatch& batch, const LearnerConfig& cfg) {
  cfg.validate();
  if (batch.empty()) throw Error("gradient step on an empty batch");
  if (model.theta.size() != batch.feature_dim()) throw DimensionError("theta length mismatch");
  const std::size_t dim = batch.feature_dim();
  const double scale = cfg.alpha / static_cast<double>(batch.size());

  std::vector<double> grad(dim);
  for (std::size_t it = 0; it < cfg.iterations_per_step; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const double* phi = batch.feature(i);
      const double err =
          dot(model.theta.data(), phi, dim) - (batch.learner_output(i) + batch.residual(i));
      for (std::size_t j = 0; j < dim; ++j) grad[j] += err * phi[j];
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      model.theta[j] -= scale * grad[j];
      norm = std::max(norm, std::abs(model.theta[j]));
    }
    if (!(norm < 1e12)) {
      throw DivergenceError("learner parameters diverged");
    }
  }
}

double predict(const LinearModel& model, const FeatureVector& feat) {
  if (model.theta.size() != feat.size()) throw DimensionError("feature length mismatch");
  return dot(model.theta.data(), feat.data(), feat.size());
}

void refresh_batch_outputs(const LinearModel& model, RingBatch& batch) {
  if (batch.empty()) return;
  if (model.theta.size() != batch.feature_dim()) throw DimensionError("theta length mismatch");
  const std::size_t dim = batch.feature_dim();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    batch.set_learner_output(i, dot(model.theta.data(), batch.feature(i), dim));
  }
}

}  // namespace esolab
