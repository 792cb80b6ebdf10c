#include "tcc/eval.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tcc/errors.hpp"
#include "tcc/io.hpp"

namespace tcc {

double classification_accuracy(const Model& model,
                               const std::vector<LabeledExample>& test) {
  if (test.empty()) throw DataError("test set is empty");
  std::size_t correct = 0;
  for (const LabeledExample& ex : test) {
    if (model.predict(ex.features) == ex.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

double clustering_accuracy(const std::vector<int>& assignments,
                           const std::vector<int>& labels) {
  if (assignments.size() != labels.size()) {
    throw std::invalid_argument("assignments and labels differ in length");
  }
  if (assignments.empty()) throw DataError("clustering accuracy of an empty set");
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != 0 && assignments[i] != 1) {
      throw std::invalid_argument("cluster assignments must be 0 or 1");
    }
    const int predicted = assignments[i] == 0 ? 1 : -1;
    if (predicted != labels[i]) ++mismatches;
  }
  const double r = static_cast<double>(mismatches) /
                   static_cast<double>(assignments.size());
  return 1.0 - std::min(r, 1.0 - r);
}

std::vector<BoundCurveRow> bound_curve(const std::vector<double>& priors,
                                       std::optional<double> pi_test,
                                       double guard) {
  std::vector<double> offending;
  for (double p : priors) {
    if (std::abs(p - 0.5) < guard) offending.push_back(p);
  }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "grid enters the singularity guard band around 0.5:";
    for (double p : offending) msg << ' ' << format_double(p);
    throw NumericalError(msg.str());
  }
  std::vector<BoundCurveRow> rows;
  rows.reserve(priors.size());
  for (double p : priors) {
    rows.push_back({p, bound_coefficient(p, pi_test.value_or(p), guard)});
  }
  return rows;
}

std::vector<double> prior_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (from > to) throw std::invalid_argument("grid start exceeds grid end");
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double p = from + static_cast<double>(k) * step;
    if (p > to + step * 1e-9) break;
    grid.push_back(p);
  }
  return grid;
}

void write_bound_curve_csv(std::ostream& out,
                           const std::vector<BoundCurveRow>& rows) {
  out << "prior,coefficient\n";
  for (const BoundCurveRow& row : rows) {
    out << format_double(row.prior) << ',' << format_double(row.coefficient)
        << '\n';
  }
}

}  // namespace tcc
