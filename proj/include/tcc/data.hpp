#pragma once

#include <cstdint>
#include <vector>

#include "tcc/rng.hpp"

namespace tcc {

struct LabeledExample {
  std::vector<double> features;
  int label;  // +1 or -1
};

// One comparison "a is at least as similar to b as to c". Labels are never
// stored; the only supervision that survives is which set a triplet landed
// in.
struct Triplet {
  std::vector<double> a, b, c;
};

struct TripletDataset {
  std::size_t dim = 0;
  std::vector<Triplet> keep;  // user left the order as shown
  std::vector<Triplet> flip;  // user flipped the order
  std::size_t size() const { return keep.size() + flip.size(); }
};

// The three pooled bags: outer positions of every triplet, middles of kept
// triplets, middles of flipped triplets. Sizes (2(n1+n2), n1, n2).
struct PointwiseBags {
  std::size_t dim = 0;
  std::vector<std::vector<double>> bag1, bag2, bag3;
};

enum class Feedback { Keep, Flip };

// Flip exactly when the outer labels agree and the middle disagrees; ties
// ("at least as similar") count as keep.
Feedback route_label_pattern(int y_a, int y_b, int y_c);

// An i.i.d. stream of labeled examples, drawn with caller-provided
// randomness so streams stay reproducible under splitting.
class LabeledSource {
 public:
  virtual ~LabeledSource() = default;
  virtual std::size_t dim() const = 0;
  virtual LabeledExample draw(Rng& rng) = 0;
};

// Two isotropic Gaussians with a shared scale, the desk-scale synthetic
// source.
struct GaussianSpec {
  std::vector<double> mu_plus;
  std::vector<double> mu_minus;
  double sigma = 1.0;
  double pi_plus = 0.5;
};

class GaussianSource final : public LabeledSource {
 public:
  explicit GaussianSource(GaussianSpec spec);
  std::size_t dim() const override { return spec_.mu_plus.size(); }
  LabeledExample draw(Rng& rng) override;
  const GaussianSpec& spec() const { return spec_; }

 private:
  GaussianSpec spec_;
};

// Draws from a finite labeled pool. With replacement by default, matching
// the i.i.d. generation assumption; the without-replacement mode exists for
// experiment parity and is off-theory. An optional prior resamples the
// classes at a target rate instead of the pool's own mix.
class PoolSource final : public LabeledSource {
 public:
  explicit PoolSource(std::vector<LabeledExample> pool,
                      bool with_replacement = true);
  PoolSource(std::vector<LabeledExample> pool, double pi_plus,
             bool with_replacement = true);
  std::size_t dim() const override { return dim_; }
  LabeledExample draw(Rng& rng) override;

 private:
  LabeledExample take(std::vector<std::size_t>& indices, Rng& rng);

  std::vector<LabeledExample> pool_;
  std::vector<std::size_t> all_, positive_, negative_;
  std::size_t dim_ = 0;
  double pi_plus_ = -1.0;  // negative: draw from the pool's own mix
  bool with_replacement_ = true;
};

// Draws count triplets of three independent examples each and routes them by
// user feedback. Triplet i consumes only substream i of the seed, so the
// prefix of a longer run is identical and generation can be parallelized.
TripletDataset generate_triplets(LabeledSource& source, std::size_t count,
                                 std::uint64_t seed);

// Pools triplet positions into the three bags. Order inside bag1 is kept a's,
// kept c's, flipped a's, flipped c's; bags 2 and 3 preserve input order.
PointwiseBags aggregate_pointwise(const TripletDataset& data);

// Convenience: count independent draws, one substream per index.
std::vector<LabeledExample> sample_labeled(LabeledSource& source,
                                           std::size_t count,
                                           std::uint64_t seed);

}  // namespace tcc
