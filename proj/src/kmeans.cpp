#include "tcc/kmeans.hpp"

#include <limits>
#include <stdexcept>

#include "tcc/errors.hpp"
#include "tcc/rng.hpp"

namespace tcc {

namespace {

constexpr int kMaxIterations = 300;
constexpr int kRestarts = 10;

double squared_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    d += diff * diff;
  }
  return d;
}

std::size_t farthest_from(const std::vector<std::vector<double>>& points,
                          const std::vector<double>& origin) {
  std::size_t best = 0;
  double best_dist = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = squared_distance(points[i], origin);
    if (d > best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

KMeansResult run_once(const std::vector<std::vector<double>>& points,
                      std::uint64_t seed) {
  const std::size_t n = points.size();
  const std::size_t dim = points[0].size();

  Rng rng(seed);
  KMeansResult result;
  result.model.centroids.resize(2);
  result.model.centroids[0] = points[rng.next_below(n)];
  result.model.centroids[1] = points[farthest_from(points, result.model.centroids[0])];
  result.assignments.assign(n, 0);

  std::vector<int> previous(n, -1);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d0 = squared_distance(points[i], result.model.centroids[0]);
      const double d1 = squared_distance(points[i], result.model.centroids[1]);
      result.assignments[i] = d1 < d0 ? 1 : 0;
    }

    std::vector<double> sums[2] = {std::vector<double>(dim, 0.0),
                                   std::vector<double>(dim, 0.0)};
    std::size_t counts[2] = {0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      const int k = result.assignments[i];
      ++counts[k];
      for (std::size_t j = 0; j < dim; ++j) sums[k][j] += points[i][j];
    }
    for (int k = 0; k < 2; ++k) {
      if (counts[k] == 0) {
        // Revive an empty cluster at the point farthest from the other one.
        result.model.centroids[k] =
            points[farthest_from(points, result.model.centroids[1 - k])];
        continue;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        result.model.centroids[k][j] = sums[k][j] / static_cast<double>(counts[k]);
      }
    }

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      objective += squared_distance(points[i],
                                    result.model.centroids[result.assignments[i]]);
    }
    result.model.objective = objective;
    result.objective_trace.push_back(objective);

    if (result.assignments == previous) break;
    previous = result.assignments;
  }
  return result;
}

}  // namespace

KMeansResult kmeans_fit(const std::vector<std::vector<double>>& points,
                        std::uint64_t seed) {
  if (points.size() < 2) {
    throw DataError("k-means needs at least two points");
  }
  const std::size_t dim = points[0].size();
  bool distinct = false;
  for (const auto& p : points) {
    if (p.size() != dim) throw DataError("k-means input mixes dimensions");
    if (p != points[0]) distinct = true;
  }
  if (!distinct) {
    throw DataError("k-means needs at least two distinct points");
  }

  KMeansResult best;
  double best_objective = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < kRestarts; ++restart) {
    KMeansResult candidate = run_once(points, derive_seed(seed, restart));
    if (candidate.model.objective < best_objective) {
      best_objective = candidate.model.objective;
      best = std::move(candidate);
    }
  }
  return best;
}

int nearest_centroid(const KMeansModel& model, const std::vector<double>& x) {
  if (model.centroids.size() != 2 || x.size() != model.centroids[0].size()) {
    throw std::invalid_argument("centroid query dimension mismatch");
  }
  const double d0 = squared_distance(x, model.centroids[0]);
  const double d1 = squared_distance(x, model.centroids[1]);
  return d1 < d0 ? 1 : 0;
}

}  // namespace tcc
