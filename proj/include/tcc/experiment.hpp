#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tcc/data.hpp"
#include "tcc/losses.hpp"
#include "tcc/train.hpp"

namespace tcc {

// Multi-trial benchmark: per trial, generate triplets, estimate the prior,
// train one model per loss, and score everything on held-out labeled data.
struct ExperimentConfig {
  // Exactly one source: a Gaussian spec or a labeled pool.
  std::optional<GaussianSpec> gaussian;
  std::vector<LabeledExample> pool;

  double pi_plus = 0.7;  // generation prior
  std::size_t triplet_count = 1000;
  std::size_t trials = 20;

  std::vector<LossKind> losses{LossKind::Squared, LossKind::DoubleHinge};
  bool kmeans_baseline = false;

  // Template for each trial; seed and priors are managed per trial (the
  // prior is always estimated from the generated triplets).
  TrainConfig train;

  // Held-out labeled test examples per trial; for pools, capped at 20% of
  // the pool.
  std::size_t test_size = 1000;

  // Shift/scale features to zero mean and unit variance, with the statistics
  // taken from the triplet instances only (labels never enter).
  bool standardize = true;

  std::uint64_t seed = 0;
};

struct EvalReport {
  std::string method;
  std::vector<double> per_trial;  // accuracy fractions
  double mean = 0.0;
  double std_error = 0.0;  // sample stddev / sqrt(trials)
  std::size_t n_test = 0;
};

struct TrialOutcome {
  std::vector<double> method_accuracy;  // config.losses order, then kmeans
  std::size_t n_test = 0;
};

// One trial in isolation; trial substreams are independent, so outcomes do
// not depend on which other trials ran.
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial);

std::vector<EvalReport> experiment_run(const ExperimentConfig& config);

// CSV with header "method,mean,std_error,trials,n_test".
void write_report_csv(std::ostream& out, const std::vector<EvalReport>& reports);

// Aligned text table with percent entries "mean (se)".
std::string format_report_table(const std::vector<EvalReport>& reports);

}  // namespace tcc
