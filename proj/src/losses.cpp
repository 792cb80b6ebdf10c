#include "tcc/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcc {

namespace {

void check_label(int label) {
  if (label != 1 && label != -1) {
    throw std::invalid_argument("label must be +1 or -1, got " +
                                std::to_string(label));
  }
}

// log(1 + exp(v)) without overflow for large v.
double softplus(double v) {
  if (v > 0.0) return v + std::log1p(std::exp(-v));
  return std::log1p(std::exp(v));
}

}  // namespace

LossKind parse_loss_kind(const std::string& name) {
  if (name == "squared") return LossKind::Squared;
  if (name == "double-hinge" || name == "double_hinge") return LossKind::DoubleHinge;
  if (name == "logistic") return LossKind::Logistic;
  throw std::invalid_argument(
      "unknown loss '" + name + "'; expected squared, double-hinge or logistic");
}

std::string loss_kind_name(LossKind kind) {
  switch (kind) {
    case LossKind::Squared: return "squared";
    case LossKind::DoubleHinge: return "double-hinge";
    case LossKind::Logistic: return "logistic";
  }
  throw std::invalid_argument("invalid loss kind");
}

double loss_value(LossKind kind, double score, int label) {
  check_label(label);
  const double margin = static_cast<double>(label) * score;
  switch (kind) {
    case LossKind::Squared: {
      const double m = margin - 1.0;
      return 0.25 * m * m;
    }
    case LossKind::DoubleHinge:
      return std::max(-margin, std::max(0.0, 0.5 * (1.0 - margin)));
    case LossKind::Logistic:
      return softplus(-margin);
  }
  throw std::invalid_argument("invalid loss kind");
}

double loss_derivative(LossKind kind, double score, int label) {
  check_label(label);
  const double t = static_cast<double>(label);
  const double margin = t * score;
  switch (kind) {
    case LossKind::Squared:
      return 0.5 * t * (margin - 1.0);
    case LossKind::DoubleHinge: {
      double slope;
      if (margin <= -1.0) {
        slope = -1.0;
      } else if (margin <= 1.0) {
        slope = -0.5;
      } else {
        slope = 0.0;
      }
      return t * slope;
    }
    case LossKind::Logistic: {
      // -t * sigmoid(-margin), evaluated stably on both tails
      if (margin >= 0.0) {
        const double e = std::exp(-margin);
        return -t * e / (1.0 + e);
      }
      return -t / (1.0 + std::exp(margin));
    }
  }
  throw std::invalid_argument("invalid loss kind");
}

LossBounds loss_bounds(LossKind kind, double score_bound) {
  if (!(score_bound > 0.0)) {
    throw std::invalid_argument("score_bound must be positive");
  }
  switch (kind) {
    case LossKind::Squared:
      return {0.5 * (score_bound + 1.0),
              0.25 * (score_bound + 1.0) * (score_bound + 1.0)};
    case LossKind::DoubleHinge:
      return {1.0, std::max(score_bound, 0.5 * (1.0 + score_bound))};
    case LossKind::Logistic:
      return {1.0, softplus(score_bound)};
  }
  throw std::invalid_argument("invalid loss kind");
}

}  // namespace tcc
