// Test-only oracles. Everything here recomputes expected values through a
// route independent of the library code under test: the pseudo-inverse is
// rebuilt numerically from the 3x2 marginal matrix, expectations are
// exhaustive enumerations over finite domains, and derivatives come from
// central finite differences.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "tcc/data.hpp"
#include "tcc/rng.hpp"

namespace oracle {

// Pseudo-inverse of the marginal mixing matrix computed numerically:
// T is assembled row by row from first principles, the Gram matrix from dot
// products, and the 2x2 inverse explicitly.
struct PseudoInverse {
  std::array<double, 3> plus;
  std::array<double, 3> minus;
  double det;
};

inline PseudoInverse pseudo_inverse(double pi_plus) {
  const double pp = pi_plus;
  const double pm = 1.0 - pi_plus;
  // keep-pattern mass as the raw six-term sum, not the simplified form
  const double pi_t = pp * pp * pp + 2.0 * pp * pp * pm + 2.0 * pp * pm * pm +
                      pm * pm * pm;
  const double mid_plus = (pp * pp * pp + 2.0 * pp * pp * pm) / pi_t;
  const double mid_minus = (2.0 * pp * pm * pm + pm * pm * pm) / pi_t;
  const double T[3][2] = {{pp, pm}, {mid_plus, mid_minus}, {pm, pp}};
  double a = 0.0, b = 0.0, c = 0.0;
  for (int r = 0; r < 3; ++r) {
    a += T[r][0] * T[r][0];
    b += T[r][0] * T[r][1];
    c += T[r][1] * T[r][1];
  }
  PseudoInverse out;
  out.det = a * c - b * b;
  for (int j = 0; j < 3; ++j) {
    out.plus[j] = (c * T[j][0] - b * T[j][1]) / out.det;
    out.minus[j] = (-b * T[j][0] + a * T[j][1]) / out.det;
  }
  return out;
}

// A finite labeled domain: k feature points with one pmf per class.
struct DiscreteDomain {
  std::vector<std::vector<double>> points;
  std::vector<double> p_plus;
  std::vector<double> p_minus;
};

// Marginal pmf of one triplet position conditioned on the feedback, obtained
// by exhausting the eight label patterns of the generation process. The
// proper/improper pattern sets are written out literally.
struct PositionMarginals {
  // [feedback 0=keep,1=flip][position 0=a,1=b,2=c] -> pmf over domain points
  std::vector<double> pmf[2][3];
  double keep_mass = 0.0;
  double flip_mass = 0.0;
};

inline PositionMarginals position_marginals(const DiscreteDomain& domain,
                                            double pi_plus) {
  const std::size_t k = domain.points.size();
  PositionMarginals out;
  for (int f = 0; f < 2; ++f) {
    for (int pos = 0; pos < 3; ++pos) out.pmf[f][pos].assign(k, 0.0);
  }
  const int labels[2] = {+1, -1};
  for (int ya : labels) {
    for (int yb : labels) {
      for (int yc : labels) {
        const bool flip = (ya == yc && ya != yb);
        const double prior_a = ya == 1 ? pi_plus : 1.0 - pi_plus;
        const double prior_b = yb == 1 ? pi_plus : 1.0 - pi_plus;
        const double prior_c = yc == 1 ? pi_plus : 1.0 - pi_plus;
        const double mass = prior_a * prior_b * prior_c;
        (flip ? out.flip_mass : out.keep_mass) += mass;
        const std::vector<double>& pa = ya == 1 ? domain.p_plus : domain.p_minus;
        const std::vector<double>& pb = yb == 1 ? domain.p_plus : domain.p_minus;
        const std::vector<double>& pc = yc == 1 ? domain.p_plus : domain.p_minus;
        for (std::size_t i = 0; i < k; ++i) {
          out.pmf[flip ? 1 : 0][0][i] += mass * pa[i];
          out.pmf[flip ? 1 : 0][1][i] += mass * pb[i];
          out.pmf[flip ? 1 : 0][2][i] += mass * pc[i];
        }
      }
    }
  }
  for (int pos = 0; pos < 3; ++pos) {
    for (std::size_t i = 0; i < k; ++i) {
      out.pmf[0][pos][i] /= out.keep_mass;
      out.pmf[1][pos][i] /= out.flip_mass;
    }
  }
  return out;
}

// Central finite difference of a scalar function of one coordinate.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Labeled source over a finite domain, for goodness-of-fit checks against
// the enumerated marginals.
class DiscreteSource final : public tcc::LabeledSource {
 public:
  DiscreteSource(DiscreteDomain domain, double pi_plus)
      : domain_(std::move(domain)), pi_plus_(pi_plus) {}

  std::size_t dim() const override { return domain_.points[0].size(); }

  tcc::LabeledExample draw(tcc::Rng& rng) override {
    const bool positive = rng.next_bernoulli(pi_plus_);
    const std::vector<double>& pmf = positive ? domain_.p_plus : domain_.p_minus;
    double u = rng.next_double();
    std::size_t pick = pmf.size() - 1;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      if (u < pmf[i]) {
        pick = i;
        break;
      }
      u -= pmf[i];
    }
    return {domain_.points[pick], positive ? 1 : -1};
  }

  const DiscreteDomain& domain() const { return domain_; }

 private:
  DiscreteDomain domain_;
  double pi_plus_;
};

// Pearson chi-square statistic of observed counts against expected
// probabilities.
inline double chi_square(const std::vector<std::size_t>& observed,
                         const std::vector<double>& expected_pmf) {
  std::size_t total = 0;
  for (std::size_t c : observed) total += c;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_pmf[i] * static_cast<double>(total);
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

}  // namespace oracle
