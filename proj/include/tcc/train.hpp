#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tcc/data.hpp"
#include "tcc/losses.hpp"
#include "tcc/model.hpp"
#include "tcc/prior.hpp"

namespace tcc {

struct TrainConfig {
  LossKind loss = LossKind::DoubleHinge;
  ModelKind model = ModelKind::Linear;
  std::size_t hidden_width = 100;

  double learning_rate = 1e-3;
  std::size_t epochs = 200;
  // 0 trains full batch; otherwise each step draws batch_size points from
  // each bag independently, with replacement.
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;

  // Unset pi_plus is estimated from the keep/flip counts; unset pi_test
  // follows the training prior.
  std::optional<double> pi_plus;
  std::optional<double> pi_test;
  double singularity_guard = kDefaultSingularGuard;

  // First-order optimizer with exponentially decayed moment estimates and
  // bias correction; per-parameter step lr * m / (sqrt(v) + stabilizer).
  double beta1 = 0.9;
  double beta2 = 0.999;
  double stabilizer = 1e-8;

  // Clamp the training objective at zero. The plain estimator is unbiased
  // and can go negative; this stays off unless an overfitting study wants it.
  bool floor_risk_at_zero = false;
};

struct TrainResult {
  Model model;
  std::vector<double> risk_trace;  // full-batch risk after each epoch
  double pi_plus = 0.0;            // prior actually used
  double pi_test = 0.0;
  RiskWeights weights{};
};

// Minimizes the unbiased risk estimate over the bags. Deterministic given
// the config: identical configs give bitwise-identical parameters. Throws on
// empty bags, a prior inside the singularity guard, or a non-finite risk.
TrainResult train(const PointwiseBags& bags, const TrainConfig& config);

}  // namespace tcc
