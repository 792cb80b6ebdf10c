#include "tcc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "tcc/errors.hpp"
#include "tcc/eval.hpp"
#include "tcc/io.hpp"
#include "tcc/kmeans.hpp"
#include "tcc/risk.hpp"

namespace tcc {

namespace {

struct Standardizer {
  std::vector<double> mean, scale;

  void fit(const PointwiseBags& bags) {
    const std::size_t dim = bags.dim;
    mean.assign(dim, 0.0);
    scale.assign(dim, 1.0);
    std::size_t count = 0;
    for (const auto* bag : {&bags.bag1, &bags.bag2, &bags.bag3}) {
      for (const auto& x : *bag) {
        for (std::size_t j = 0; j < dim; ++j) mean[j] += x[j];
        ++count;
      }
    }
    for (std::size_t j = 0; j < dim; ++j) mean[j] /= static_cast<double>(count);
    std::vector<double> var(dim, 0.0);
    for (const auto* bag : {&bags.bag1, &bags.bag2, &bags.bag3}) {
      for (const auto& x : *bag) {
        for (std::size_t j = 0; j < dim; ++j) {
          const double d = x[j] - mean[j];
          var[j] += d * d;
        }
      }
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const double sd = std::sqrt(var[j] / static_cast<double>(count));
      if (sd > 0.0) scale[j] = sd;  // constant features stay centered only
    }
  }

  void apply(std::vector<double>& x) const {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] - mean[j]) / scale[j];
  }

  void apply(PointwiseBags& bags) const {
    for (auto* bag : {&bags.bag1, &bags.bag2, &bags.bag3}) {
      for (auto& x : *bag) apply(x);
    }
  }

  void apply(std::vector<LabeledExample>& examples) const {
    for (auto& ex : examples) apply(ex.features);
  }
};

void check_config(const ExperimentConfig& config) {
  if (config.gaussian.has_value() == !config.pool.empty()) {
    throw std::invalid_argument(
        "experiment needs exactly one source: a Gaussian spec or a labeled pool");
  }
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  if (config.triplet_count == 0) {
    throw std::invalid_argument("triplet_count must be positive");
  }
  if (config.losses.empty() && !config.kmeans_baseline) {
    throw std::invalid_argument("no methods selected");
  }
  if (config.test_size == 0) throw std::invalid_argument("test_size must be positive");
  if (!(config.pi_plus > 0.0 && config.pi_plus <= 1.0)) {
    throw std::invalid_argument("pi_plus must lie in (0, 1]");
  }
}

// Splits a labeled pool into a class-balanced test set at the target prior
// and a leftover training pool.
void split_pool(const std::vector<LabeledExample>& pool, double pi_plus,
                std::size_t test_size, Rng& rng,
                std::vector<LabeledExample>& test,
                std::vector<LabeledExample>& train) {
  std::vector<std::size_t> positive, negative;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    (pool[i].label == 1 ? positive : negative).push_back(i);
  }
  const std::size_t want = std::min(test_size, pool.size() / 5);
  if (want == 0) throw DataError("pool too small to hold out a test set");
  std::size_t n_pos = static_cast<std::size_t>(
      std::llround(pi_plus * static_cast<double>(want)));
  n_pos = std::min(n_pos, positive.size());
  std::size_t n_neg = std::min(want - n_pos, negative.size());
  if (n_pos + n_neg == 0) throw DataError("pool too small to hold out a test set");

  std::vector<bool> held(pool.size(), false);
  auto pick = [&](std::vector<std::size_t>& ids, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t at = rng.next_below(ids.size());
      held[ids[at]] = true;
      test.push_back(pool[ids[at]]);
      ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(at));
    }
  };
  pick(positive, n_pos);
  pick(negative, n_neg);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!held[i]) train.push_back(pool[i]);
  }
  if (train.empty()) throw DataError("pool too small to keep a training split");
}

}  // namespace

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial) {
  check_config(config);
  const std::uint64_t trial_seed = derive_seed(config.seed, trial);

  std::vector<LabeledExample> test;
  std::unique_ptr<LabeledSource> source;
  if (config.gaussian) {
    GaussianSpec spec = *config.gaussian;
    spec.pi_plus = config.pi_plus;
    GaussianSource test_source(spec);
    test = sample_labeled(test_source, config.test_size, derive_seed(trial_seed, 1));
    source = std::make_unique<GaussianSource>(spec);
  } else {
    std::vector<LabeledExample> train_pool;
    Rng split_rng(derive_seed(trial_seed, 1));
    split_pool(config.pool, config.pi_plus, config.test_size, split_rng, test,
               train_pool);
    source = std::make_unique<PoolSource>(std::move(train_pool), config.pi_plus);
  }

  const TripletDataset triplets =
      generate_triplets(*source, config.triplet_count, derive_seed(trial_seed, 2));
  PointwiseBags bags = aggregate_pointwise(triplets);

  if (config.standardize) {
    Standardizer standardizer;
    standardizer.fit(bags);
    standardizer.apply(bags);
    standardizer.apply(test);
  }

  TrialOutcome outcome;
  outcome.n_test = test.size();

  // The prior is estimated from the keep/flip counts. Small samples can push
  // the estimate into the singular band around 0.5; a trial still has to
  // produce a model, so snap it to the nearest admissible prior on the
  // pi+ > 1/2 branch.
  double pi_hat = prior_from_pi_t(
      estimate_pi_t(bags.bag2.size(), bags.bag3.size()));
  pi_hat = std::max(pi_hat, 0.5 + config.train.singularity_guard);

  for (std::size_t li = 0; li < config.losses.size(); ++li) {
    TrainConfig tc = config.train;
    tc.loss = config.losses[li];
    tc.seed = derive_seed(trial_seed, 3);
    tc.pi_plus = pi_hat;
    tc.pi_test.reset();  // test prior follows the estimate
    const TrainResult trained = train(bags, tc);
    outcome.method_accuracy.push_back(classification_accuracy(trained.model, test));
  }

  if (config.kmeans_baseline) {
    std::vector<std::vector<double>> instances;
    instances.reserve(bags.bag1.size() + bags.bag2.size() + bags.bag3.size());
    for (const auto* bag : {&bags.bag1, &bags.bag2, &bags.bag3}) {
      instances.insert(instances.end(), bag->begin(), bag->end());
    }
    const KMeansResult km = kmeans_fit(instances, derive_seed(trial_seed, 4));
    std::vector<int> assignments;
    std::vector<int> labels;
    assignments.reserve(test.size());
    labels.reserve(test.size());
    for (const LabeledExample& ex : test) {
      assignments.push_back(nearest_centroid(km.model, ex.features));
      labels.push_back(ex.label);
    }
    outcome.method_accuracy.push_back(clustering_accuracy(assignments, labels));
  }
  return outcome;
}

std::vector<EvalReport> experiment_run(const ExperimentConfig& config) {
  check_config(config);
  std::vector<std::string> names;
  for (LossKind loss : config.losses) names.push_back(loss_kind_name(loss));
  if (config.kmeans_baseline) names.push_back("kmeans");

  std::vector<EvalReport> reports(names.size());
  for (std::size_t m = 0; m < names.size(); ++m) reports[m].method = names[m];

  for (std::size_t t = 0; t < config.trials; ++t) {
    TrialOutcome outcome;
    try {
      outcome = run_trial(config, t);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "trial " << t << ": " << e.what();
      throw DataError(msg.str());
    }
    for (std::size_t m = 0; m < names.size(); ++m) {
      reports[m].per_trial.push_back(outcome.method_accuracy[m]);
      reports[m].n_test = outcome.n_test;
    }
  }

  for (EvalReport& report : reports) {
    const double k = static_cast<double>(report.per_trial.size());
    double sum = 0.0;
    for (double a : report.per_trial) sum += a;
    report.mean = sum / k;
    if (report.per_trial.size() > 1) {
      double ss = 0.0;
      for (double a : report.per_trial) {
        const double d = a - report.mean;
        ss += d * d;
      }
      report.std_error = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
  }
  return reports;
}

void write_report_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << "method,mean,std_error,trials,n_test\n";
  for (const EvalReport& r : reports) {
    out << r.method << ',' << format_double(r.mean) << ','
        << format_double(r.std_error) << ',' << r.per_trial.size() << ','
        << r.n_test << '\n';
  }
}

std::string format_report_table(const std::vector<EvalReport>& reports) {
  std::size_t width = 6;
  for (const EvalReport& r : reports) width = std::max(width, r.method.size());
  std::ostringstream out;
  out << "method";
  out << std::string(width - 6 + 2, ' ') << "accuracy%\n";
  char buf[64];
  for (const EvalReport& r : reports) {
    std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", 100.0 * r.mean,
                  100.0 * r.std_error);
    out << r.method << std::string(width - r.method.size() + 2, ' ') << buf
        << '\n';
  }
  return out.str();
}

}  // namespace tcc
