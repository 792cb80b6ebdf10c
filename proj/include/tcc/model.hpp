#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tcc/rng.hpp"

namespace tcc {

enum class ModelKind { Linear, Mlp1 };

ModelKind parse_model_kind(const std::string& name);  // "linear" | "mlp1"
std::string model_kind_name(ModelKind kind);

// A scoring function over feature vectors. Linear stores [w (dim), bias];
// mlp1 stores [W1 (hidden x dim, row-major), b1 (hidden), w2 (hidden), b2]
// with ReLU hidden units.
struct Model {
  ModelKind kind = ModelKind::Linear;
  std::size_t dim = 0;
  std::size_t hidden_width = 0;  // mlp1 only
  std::vector<double> params;

  double score(const std::vector<double>& x) const;

  // Predicted label: sign of the score, with score 0 mapping to +1.
  int predict(const std::vector<double>& x) const {
    return score(x) >= 0.0 ? 1 : -1;
  }

  // Adds coeff * d(score)/d(params) into grad. ReLU units take derivative 0
  // exactly at the kink.
  void add_score_gradient(const std::vector<double>& x, double coeff,
                          std::vector<double>& grad) const;

  // Fused pair for hot loops: score_cached stores the hidden pre-activations
  // in scratch so the matching gradient call skips the second forward pass.
  double score_cached(const std::vector<double>& x,
                      std::vector<double>& scratch) const;
  void add_score_gradient_cached(const std::vector<double>& x,
                                 const std::vector<double>& scratch,
                                 double coeff, std::vector<double>& grad) const;
};

std::size_t model_param_count(ModelKind kind, std::size_t dim,
                              std::size_t hidden_width);

// Linear models start at zero.
Model make_linear_model(std::size_t dim);

// First-layer and output weights start fan-in-scaled uniform, biases zero.
Model make_mlp1_model(std::size_t dim, std::size_t hidden_width, Rng& rng);

// Persistence: {"kind", "d", "hidden_width", "params"} with doubles encoded
// as shortest round-trip decimals, so save/load is exact.
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace tcc
