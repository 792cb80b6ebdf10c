#include "tcc/risk.hpp"

#include "tcc/errors.hpp"

namespace tcc {

namespace {

void check_bags(const PointwiseBags& bags) {
  if (bags.bag1.empty()) throw DataError("bag1 is empty; cannot estimate the risk");
  if (bags.bag2.empty()) throw DataError("bag2 is empty; cannot estimate the risk");
  if (bags.bag3.empty()) throw DataError("bag3 is empty; cannot estimate the risk");
}

}  // namespace

double empirical_risk(const Model& model, const PointwiseBags& bags,
                      const RiskWeights& weights,
                      const std::function<double(double, int)>& loss_value_fn) {
  check_bags(bags);
  const std::vector<std::vector<double>>* bag[3] = {&bags.bag1, &bags.bag2,
                                                    &bags.bag3};
  const double w_pos[3] = {weights.w1_pos, weights.w2_pos, weights.w3_pos};
  const double w_neg[3] = {weights.w1_neg, weights.w2_neg, weights.w3_neg};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    double sum = 0.0;
    for (const std::vector<double>& x : *bag[i]) {
      const double z = model.score(x);
      sum += w_pos[i] * loss_value_fn(z, 1) + w_neg[i] * loss_value_fn(z, -1);
    }
    total += sum / static_cast<double>(bag[i]->size());
  }
  return total;
}

double empirical_risk(const Model& model, const PointwiseBags& bags,
                      const RiskWeights& weights, LossKind loss) {
  return empirical_risk(model, bags, weights, [loss](double z, int t) {
    return loss_value(loss, z, t);
  });
}

RiskAndGradient risk_and_gradient(const Model& model, const PointwiseBags& bags,
                                  const RiskWeights& weights, LossKind loss) {
  check_bags(bags);
  const std::vector<std::vector<double>>* bag[3] = {&bags.bag1, &bags.bag2,
                                                    &bags.bag3};
  const double w_pos[3] = {weights.w1_pos, weights.w2_pos, weights.w3_pos};
  const double w_neg[3] = {weights.w1_neg, weights.w2_neg, weights.w3_neg};
  RiskAndGradient out;
  out.risk = 0.0;
  out.gradient.assign(model.params.size(), 0.0);
  std::vector<double> scratch;
  for (int i = 0; i < 3; ++i) {
    const double scale = 1.0 / static_cast<double>(bag[i]->size());
    double sum = 0.0;
    for (const std::vector<double>& x : *bag[i]) {
      const double z = model.score_cached(x, scratch);
      sum += w_pos[i] * loss_value(loss, z, 1) + w_neg[i] * loss_value(loss, z, -1);
      const double dz = w_pos[i] * loss_derivative(loss, z, 1) +
                        w_neg[i] * loss_derivative(loss, z, -1);
      model.add_score_gradient_cached(x, scratch, scale * dz, out.gradient);
    }
    out.risk += scale * sum;
  }
  return out;
}

std::vector<double> risk_gradient(const Model& model, const PointwiseBags& bags,
                                  const RiskWeights& weights, LossKind loss) {
  return risk_and_gradient(model, bags, weights, loss).gradient;
}

}  // namespace tcc
