#include "tcc/train.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tcc/errors.hpp"
#include "tcc/risk.hpp"

namespace tcc {

namespace {

void check_config(const TrainConfig& config) {
  if (!(config.learning_rate > 0.0)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  if (!(config.beta1 >= 0.0 && config.beta1 < 1.0) ||
      !(config.beta2 >= 0.0 && config.beta2 < 1.0)) {
    throw std::invalid_argument("moment decays must lie in [0, 1)");
  }
  if (!(config.stabilizer > 0.0)) {
    throw std::invalid_argument("stabilizer must be positive");
  }
  if (config.model == ModelKind::Mlp1 && config.hidden_width == 0) {
    throw std::invalid_argument("hidden_width must be positive for mlp1");
  }
}

PointwiseBags sample_batch(const PointwiseBags& bags, std::size_t batch_size,
                           Rng& rng) {
  PointwiseBags mini;
  mini.dim = bags.dim;
  auto fill = [&](const std::vector<std::vector<double>>& src,
                  std::vector<std::vector<double>>& dst) {
    dst.reserve(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) {
      dst.push_back(src[rng.next_below(src.size())]);
    }
  };
  fill(bags.bag1, mini.bag1);
  fill(bags.bag2, mini.bag2);
  fill(bags.bag3, mini.bag3);
  return mini;
}

}  // namespace

TrainResult train(const PointwiseBags& bags, const TrainConfig& config) {
  check_config(config);
  if (bags.bag1.empty()) throw DataError("bag1 is empty; nothing to train on");
  if (bags.bag2.empty()) throw DataError("bag2 is empty; nothing to train on");
  if (bags.bag3.empty()) throw DataError("bag3 is empty; nothing to train on");

  TrainResult result;
  result.pi_plus = config.pi_plus
                       ? *config.pi_plus
                       : prior_from_pi_t(estimate_pi_t(bags.bag2.size(),
                                                       bags.bag3.size()));
  result.pi_test = config.pi_test ? *config.pi_test : result.pi_plus;
  result.weights =
      risk_weights(result.pi_plus, result.pi_test, config.singularity_guard);

  Rng init_rng(derive_seed(config.seed, 0));
  result.model = config.model == ModelKind::Linear
                     ? make_linear_model(bags.dim)
                     : make_mlp1_model(bags.dim, config.hidden_width, init_rng);

  Rng batch_rng(derive_seed(config.seed, 1));
  const std::size_t steps_per_epoch =
      config.batch_size == 0
          ? 1
          : (bags.bag1.size() + config.batch_size - 1) / config.batch_size;

  std::vector<double> m(result.model.params.size(), 0.0);
  std::vector<double> v(result.model.params.size(), 0.0);
  double beta1_t = 1.0;
  double beta2_t = 1.0;

  result.risk_trace.reserve(config.epochs);
  const bool full_batch = config.batch_size == 0;
  auto record = [&](double risk, std::size_t epoch) {
    if (!std::isfinite(risk)) {
      std::ostringstream msg;
      msg << "training diverged: risk is not finite after epoch " << epoch + 1
          << " (loss " << loss_kind_name(config.loss) << ", lr "
          << config.learning_rate << ")";
      throw NumericalError(msg.str());
    }
    result.risk_trace.push_back(risk);
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t step = 0; step < steps_per_epoch; ++step) {
      RiskAndGradient rg;
      if (full_batch) {
        rg = risk_and_gradient(result.model, bags, result.weights, config.loss);
        // params are unchanged since the last update, so this risk is the
        // previous epoch's trace entry
        if (epoch > 0) record(rg.risk, epoch - 1);
      } else {
        const PointwiseBags mini = sample_batch(bags, config.batch_size, batch_rng);
        rg = risk_and_gradient(result.model, mini, result.weights, config.loss);
      }
      if (config.floor_risk_at_zero && rg.risk < 0.0) {
        continue;  // objective max(0, risk) is flat here
      }
      beta1_t *= config.beta1;
      beta2_t *= config.beta2;
      for (std::size_t i = 0; i < result.model.params.size(); ++i) {
        const double g = rg.gradient[i];
        m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g;
        v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g * g;
        const double m_hat = m[i] / (1.0 - beta1_t);
        const double v_hat = v[i] / (1.0 - beta2_t);
        result.model.params[i] -=
            config.learning_rate * m_hat / (std::sqrt(v_hat) + config.stabilizer);
      }
    }
    if (!full_batch) {
      record(empirical_risk(result.model, bags, result.weights, config.loss),
             epoch);
    }
  }
  if (full_batch && config.epochs > 0) {
    record(empirical_risk(result.model, bags, result.weights, config.loss),
           config.epochs - 1);
  }
  return result;
}

}  // namespace tcc
