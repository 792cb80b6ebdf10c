#pragma once

#include <functional>
#include <vector>

#include "tcc/data.hpp"
#include "tcc/losses.hpp"
#include "tcc/model.hpp"
#include "tcc/prior.hpp"

namespace tcc {

// The unbiased classification-risk estimate: for each bag, the sample mean
// of w_pos * loss(f(x), +1) + w_neg * loss(f(x), -1), summed over the three
// bags. Signed weights, so the value may be negative. Throws when a bag is
// empty, naming it.
double empirical_risk(const Model& model, const PointwiseBags& bags,
                      const RiskWeights& weights, LossKind loss);

// Same estimator with a caller-supplied loss value function.
double empirical_risk(const Model& model, const PointwiseBags& bags,
                      const RiskWeights& weights,
                      const std::function<double(double, int)>& loss_value_fn);

// Exact gradient of empirical_risk in the model parameters, using the fixed
// subgradient choices at loss and ReLU kinks.
std::vector<double> risk_gradient(const Model& model, const PointwiseBags& bags,
                                  const RiskWeights& weights, LossKind loss);

// One pass computing both; the building block of the training loop.
struct RiskAndGradient {
  double risk;
  std::vector<double> gradient;
};
RiskAndGradient risk_and_gradient(const Model& model, const PointwiseBags& bags,
                                  const RiskWeights& weights, LossKind loss);

}  // namespace tcc
