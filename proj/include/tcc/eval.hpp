#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "tcc/data.hpp"
#include "tcc/model.hpp"
#include "tcc/prior.hpp"

namespace tcc {

// Fraction of test points whose predicted sign matches the label.
double classification_accuracy(const Model& model,
                               const std::vector<LabeledExample>& test);

// Label-permutation-invariant accuracy 1 - min(r, 1 - r) for a two-cluster
// assignment against +-1 labels; never below 0.5.
double clustering_accuracy(const std::vector<int>& assignments,
                           const std::vector<int>& labels);

struct BoundCurveRow {
  double prior;
  double coefficient;
};

// bound_coefficient along a prior grid; pi_test follows the prior unless
// fixed. Rejects grids that enter the singularity guard band, listing the
// offending points.
std::vector<BoundCurveRow> bound_curve(const std::vector<double>& priors,
                                       std::optional<double> pi_test = {},
                                       double guard = kDefaultSingularGuard);

// Inclusive grid from..to at the given step.
std::vector<double> prior_grid(double from, double to, double step);

// CSV with header "prior,coefficient".
void write_bound_curve_csv(std::ostream& out,
                           const std::vector<BoundCurveRow>& rows);

}  // namespace tcc
