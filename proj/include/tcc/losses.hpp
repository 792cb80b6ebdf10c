#pragma once

#include <string>

namespace tcc {

enum class LossKind { Squared, DoubleHinge, Logistic };

// Accepts "squared", "double-hinge" (or "double_hinge") and "logistic".
LossKind parse_loss_kind(const std::string& name);
std::string loss_kind_name(LossKind kind);

// Margin losses, label t in {+1, -1}:
//   squared:      (t*z - 1)^2 / 4
//   double hinge: max(-t*z, max(0, (1 - t*z) / 2))
//   logistic:     log(1 + exp(-t*z))
double loss_value(LossKind kind, double score, int label);

// Derivative in the score. The double hinge takes the left branch at its
// kinks t*z = -1 and t*z = 1 so training is deterministic.
double loss_derivative(LossKind kind, double score, int label);

struct LossBounds {
  double lipschitz;  // rho over scores bounded by score_bound
  double ceiling;    // sup of the loss over |score| <= score_bound
};

LossBounds loss_bounds(LossKind kind, double score_bound);

}  // namespace tcc
