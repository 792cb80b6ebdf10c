#pragma once

#include <cstdint>
#include <vector>

namespace tcc {

// Two-cluster model fitted by Lloyd iterations.
struct KMeansModel {
  std::vector<std::vector<double>> centroids;  // exactly 2
  double objective = 0.0;  // sum of squared distances to assigned centroids
};

struct KMeansResult {
  KMeansModel model;
  std::vector<int> assignments;         // 0 or 1 per input point
  std::vector<double> objective_trace;  // winning restart, one entry per iteration
};

// Farthest-point seeding from the seed, 10 restarts keeping the best
// objective, at most 300 Lloyd iterations each. Deterministic. Requires at
// least two distinct points.
KMeansResult kmeans_fit(const std::vector<std::vector<double>>& points,
                        std::uint64_t seed);

int nearest_centroid(const KMeansModel& model, const std::vector<double>& x);

}  // namespace tcc
