#include "tcc/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tcc/errors.hpp"

namespace tcc {

namespace {

using nlohmann::json;

void check_dim(const Model& model, const std::vector<double>& x) {
  if (x.size() != model.dim) {
    std::ostringstream msg;
    msg << "feature dimension " << x.size() << " does not match model dimension "
        << model.dim;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
  if (name == "linear") return ModelKind::Linear;
  if (name == "mlp1") return ModelKind::Mlp1;
  throw std::invalid_argument("unknown model '" + name +
                              "'; expected linear or mlp1");
}

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Linear: return "linear";
    case ModelKind::Mlp1: return "mlp1";
  }
  throw std::invalid_argument("invalid model kind");
}

std::size_t model_param_count(ModelKind kind, std::size_t dim,
                              std::size_t hidden_width) {
  switch (kind) {
    case ModelKind::Linear: return dim + 1;
    case ModelKind::Mlp1: return dim * hidden_width + 2 * hidden_width + 1;
  }
  throw std::invalid_argument("invalid model kind");
}

double Model::score(const std::vector<double>& x) const {
  check_dim(*this, x);
  if (kind == ModelKind::Linear) {
    double z = params[dim];
    for (std::size_t i = 0; i < dim; ++i) z += params[i] * x[i];
    return z;
  }
  const std::size_t h = hidden_width;
  const double* w1 = params.data();
  const double* b1 = params.data() + dim * h;
  const double* w2 = b1 + h;
  const double b2 = *(w2 + h);
  double z = b2;
  for (std::size_t j = 0; j < h; ++j) {
    double act = b1[j];
    const double* row = w1 + j * dim;
    for (std::size_t i = 0; i < dim; ++i) act += row[i] * x[i];
    if (act > 0.0) z += w2[j] * act;
  }
  return z;
}

void Model::add_score_gradient(const std::vector<double>& x, double coeff,
                               std::vector<double>& grad) const {
  std::vector<double> scratch;
  score_cached(x, scratch);
  add_score_gradient_cached(x, scratch, coeff, grad);
}

double Model::score_cached(const std::vector<double>& x,
                           std::vector<double>& scratch) const {
  check_dim(*this, x);
  if (kind == ModelKind::Linear) {
    double z = params[dim];
    for (std::size_t i = 0; i < dim; ++i) z += params[i] * x[i];
    return z;
  }
  const std::size_t h = hidden_width;
  const double* w1 = params.data();
  const double* b1 = params.data() + dim * h;
  const double* w2 = b1 + h;
  scratch.resize(h);
  double z = *(w2 + h);
  for (std::size_t j = 0; j < h; ++j) {
    double act = b1[j];
    const double* row = w1 + j * dim;
    for (std::size_t i = 0; i < dim; ++i) act += row[i] * x[i];
    scratch[j] = act;
    if (act > 0.0) z += w2[j] * act;
  }
  return z;
}

void Model::add_score_gradient_cached(const std::vector<double>& x,
                                      const std::vector<double>& scratch,
                                      double coeff,
                                      std::vector<double>& grad) const {
  check_dim(*this, x);
  if (grad.size() != params.size()) {
    throw std::invalid_argument("gradient buffer size does not match parameters");
  }
  if (kind == ModelKind::Linear) {
    for (std::size_t i = 0; i < dim; ++i) grad[i] += coeff * x[i];
    grad[dim] += coeff;
    return;
  }
  const std::size_t h = hidden_width;
  if (scratch.size() != h) {
    throw std::invalid_argument("scratch does not hold the hidden activations");
  }
  const double* w2 = params.data() + dim * h + h;
  double* g_w1 = grad.data();
  double* g_b1 = grad.data() + dim * h;
  double* g_w2 = g_b1 + h;
  double* g_b2 = g_w2 + h;
  for (std::size_t j = 0; j < h; ++j) {
    const double act = scratch[j];
    if (act > 0.0) {
      g_w2[j] += coeff * act;
      const double back = coeff * w2[j];
      double* g_row = g_w1 + j * dim;
      for (std::size_t i = 0; i < dim; ++i) g_row[i] += back * x[i];
      g_b1[j] += back;
    }
  }
  *g_b2 += coeff;
}

Model make_linear_model(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("model dimension must be positive");
  Model m;
  m.kind = ModelKind::Linear;
  m.dim = dim;
  m.params.assign(dim + 1, 0.0);
  return m;
}

Model make_mlp1_model(std::size_t dim, std::size_t hidden_width, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("model dimension must be positive");
  if (hidden_width == 0) throw std::invalid_argument("hidden width must be positive");
  Model m;
  m.kind = ModelKind::Mlp1;
  m.dim = dim;
  m.hidden_width = hidden_width;
  m.params.assign(model_param_count(ModelKind::Mlp1, dim, hidden_width), 0.0);
  const double in_scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim * hidden_width; ++i) {
    m.params[i] = (2.0 * rng.next_double() - 1.0) * in_scale;
  }
  const double out_scale = 1.0 / std::sqrt(static_cast<double>(hidden_width));
  const std::size_t w2_offset = dim * hidden_width + hidden_width;
  for (std::size_t j = 0; j < hidden_width; ++j) {
    m.params[w2_offset + j] = (2.0 * rng.next_double() - 1.0) * out_scale;
  }
  return m;
}

std::string model_to_json(const Model& model) {
  json j;
  j["kind"] = model_kind_name(model.kind);
  j["d"] = model.dim;
  j["hidden_width"] = model.hidden_width;
  j["params"] = model.params;
  return j.dump();
}

Model model_from_json(const std::string& text) {
  json j;
  Model m;
  try {
    j = json::parse(text);
    if (!j.is_object() || !j.contains("kind") || !j.contains("d") ||
        !j.contains("params")) {
      throw DataError("model JSON needs kind, d and params");
    }
    m.kind = parse_model_kind(j["kind"].get<std::string>());
    m.dim = j["d"].get<std::size_t>();
    m.hidden_width = j.value("hidden_width", std::size_t{0});
    m.params = j["params"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  }
  if (m.dim == 0) throw DataError("model dimension must be positive");
  if (m.kind == ModelKind::Mlp1 && m.hidden_width == 0) {
    throw DataError("mlp1 model needs a positive hidden_width");
  }
  if (m.params.size() != model_param_count(m.kind, m.dim, m.hidden_width)) {
    std::ostringstream msg;
    msg << "model has " << m.params.size() << " parameters, expected "
        << model_param_count(m.kind, m.dim, m.hidden_width);
    throw DataError(msg.str());
  }
  for (double p : m.params) {
    if (!std::isfinite(p)) throw DataError("model parameters must be finite");
  }
  return m;
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open file for writing");
  out << model_to_json(model) << '\n';
  if (!out) throw DataError(path + ": write failed");
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace tcc
