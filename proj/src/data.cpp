#include "tcc/data.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "tcc/errors.hpp"

namespace tcc {

Feedback route_label_pattern(int y_a, int y_b, int y_c) {
  auto check = [](int y, const char* name) {
    if (y != 1 && y != -1) {
      throw std::invalid_argument(std::string(name) + " must be +1 or -1, got " +
                                  std::to_string(y));
    }
  };
  check(y_a, "y_a");
  check(y_b, "y_b");
  check(y_c, "y_c");
  return (y_a == y_c && y_a != y_b) ? Feedback::Flip : Feedback::Keep;
}

GaussianSource::GaussianSource(GaussianSpec spec) : spec_(std::move(spec)) {
  if (spec_.mu_plus.size() != spec_.mu_minus.size() || spec_.mu_plus.empty()) {
    throw std::invalid_argument("Gaussian means must share a nonzero dimension");
  }
  if (!(spec_.sigma > 0.0)) {
    throw std::invalid_argument("Gaussian sigma must be positive");
  }
  if (!(spec_.pi_plus >= 0.0 && spec_.pi_plus <= 1.0)) {
    throw std::invalid_argument("Gaussian pi_plus must be a probability");
  }
}

LabeledExample GaussianSource::draw(Rng& rng) {
  const bool positive = rng.next_bernoulli(spec_.pi_plus);
  const std::vector<double>& mu = positive ? spec_.mu_plus : spec_.mu_minus;
  LabeledExample out;
  out.label = positive ? 1 : -1;
  out.features.resize(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out.features[i] = mu[i] + spec_.sigma * rng.next_normal();
  }
  return out;
}

PoolSource::PoolSource(std::vector<LabeledExample> pool, bool with_replacement)
    : pool_(std::move(pool)), with_replacement_(with_replacement) {
  if (pool_.empty()) throw DataError("labeled pool is empty");
  dim_ = pool_[0].features.size();
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (pool_[i].features.size() != dim_) {
      throw DataError("labeled pool mixes feature dimensions");
    }
    all_.push_back(i);
  }
}

PoolSource::PoolSource(std::vector<LabeledExample> pool, double pi_plus,
                       bool with_replacement)
    : PoolSource(std::move(pool), with_replacement) {
  if (!(pi_plus >= 0.0 && pi_plus <= 1.0)) {
    throw std::invalid_argument("pool pi_plus must be a probability");
  }
  pi_plus_ = pi_plus;
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    (pool_[i].label == 1 ? positive_ : negative_).push_back(i);
  }
  if ((pi_plus_ > 0.0 && positive_.empty()) ||
      (pi_plus_ < 1.0 && negative_.empty())) {
    throw DataError("labeled pool lacks a class required by the target prior");
  }
}

LabeledExample PoolSource::take(std::vector<std::size_t>& indices, Rng& rng) {
  if (indices.empty()) {
    throw DataError("labeled pool exhausted (without-replacement mode)");
  }
  const std::size_t pick = rng.next_below(indices.size());
  const std::size_t idx = indices[pick];
  if (!with_replacement_) {
    indices.erase(indices.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return pool_[idx];
}

LabeledExample PoolSource::draw(Rng& rng) {
  if (pi_plus_ < 0.0) return take(all_, rng);
  const bool positive = rng.next_bernoulli(pi_plus_);
  return take(positive ? positive_ : negative_, rng);
}

TripletDataset generate_triplets(LabeledSource& source, std::size_t count,
                                 std::uint64_t seed) {
  TripletDataset out;
  out.dim = source.dim();
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    LabeledExample ea = source.draw(rng);
    LabeledExample eb = source.draw(rng);
    LabeledExample ec = source.draw(rng);
    if (ea.features.size() != out.dim || eb.features.size() != out.dim ||
        ec.features.size() != out.dim) {
      throw DataError("labeled source returned an inconsistent dimension");
    }
    const Feedback feedback = route_label_pattern(ea.label, eb.label, ec.label);
    Triplet t{std::move(ea.features), std::move(eb.features),
              std::move(ec.features)};
    (feedback == Feedback::Flip ? out.flip : out.keep).push_back(std::move(t));
  }
  return out;
}

PointwiseBags aggregate_pointwise(const TripletDataset& data) {
  PointwiseBags bags;
  bags.dim = data.dim;
  bags.bag1.reserve(2 * data.size());
  bags.bag2.reserve(data.keep.size());
  bags.bag3.reserve(data.flip.size());
  for (const Triplet& t : data.keep) bags.bag1.push_back(t.a);
  for (const Triplet& t : data.keep) bags.bag1.push_back(t.c);
  for (const Triplet& t : data.flip) bags.bag1.push_back(t.a);
  for (const Triplet& t : data.flip) bags.bag1.push_back(t.c);
  for (const Triplet& t : data.keep) bags.bag2.push_back(t.b);
  for (const Triplet& t : data.flip) bags.bag3.push_back(t.b);
  return bags;
}

std::vector<LabeledExample> sample_labeled(LabeledSource& source,
                                           std::size_t count,
                                           std::uint64_t seed) {
  std::vector<LabeledExample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    out.push_back(source.draw(rng));
  }
  return out;
}

}  // namespace tcc
