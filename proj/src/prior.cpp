#include "tcc/prior.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tcc/errors.hpp"

namespace tcc {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must be a probability in [0, 1], got " << p;
    throw std::invalid_argument(msg.str());
  }
}

void check_not_singular(double pi_plus, double guard) {
  if (guard < 0.0) throw std::invalid_argument("singularity guard must be >= 0");
  if (std::abs(pi_plus - 0.5) < guard) {
    std::ostringstream msg;
    msg << "prior " << pi_plus << " is within " << guard
        << " of 0.5; the mixture inversion is singular";
    throw NumericalError(msg.str());
  }
}

}  // namespace

ClassPrior make_class_prior(double pi_plus) {
  return make_class_prior(pi_plus, pi_plus);
}

ClassPrior make_class_prior(double pi_plus, double pi_test) {
  if (!(pi_plus > 0.0 && pi_plus < 1.0)) {
    throw std::invalid_argument("pi_plus must lie strictly inside (0, 1)");
  }
  check_probability(pi_test, "pi_test");
  return ClassPrior{pi_plus, pi_test};
}

double pi_t_from_prior(double pi_plus) {
  check_probability(pi_plus, "pi_plus");
  return 1.0 - pi_plus * (1.0 - pi_plus);
}

double prior_from_pi_t(double pi_t, double clamp_tol) {
  if (!(pi_t <= 1.0)) {
    throw std::invalid_argument("pi_t cannot exceed 1");
  }
  if (pi_t < 0.75 - clamp_tol) {
    std::ostringstream msg;
    msg << "pi_t estimate " << pi_t
        << " is below 0.75; the keep/flip counts are inconsistent with the "
           "generation model";
    throw NumericalError(msg.str());
  }
  // Noise can push the estimate slightly below the attainable minimum 0.75;
  // clamp the discriminant at zero, which lands on pi_plus = 0.5.
  const double disc = std::max(0.0, 4.0 * pi_t - 3.0);
  return 0.5 * (1.0 + std::sqrt(disc));
}

double estimate_pi_t(std::size_t n_keep, std::size_t n_flip) {
  if (n_keep + n_flip == 0) {
    throw DataError("cannot estimate pi_t from an empty triplet dataset");
  }
  return static_cast<double>(n_keep) / static_cast<double>(n_keep + n_flip);
}

MixingCoefficients mixing_coefficients(double pi_plus) {
  if (!(pi_plus > 0.0 && pi_plus <= 1.0)) {
    throw std::invalid_argument("pi_plus must lie in (0, 1]");
  }
  const double pp = pi_plus;
  const double pm = 1.0 - pi_plus;
  const double pi_t = 1.0 - pp * pm;
  const double mid_plus = (pp * pp * pp + 2.0 * pp * pp * pm) / pi_t;
  const double mid_minus = (2.0 * pp * pm * pm + pm * pm * pm) / pi_t;
  const double gram_pp = pp * pp + mid_plus * mid_plus + pm * pm;
  const double gram_pm = 2.0 * pp * pm + mid_plus * mid_minus;
  const double gram_mm = pm * pm + mid_minus * mid_minus + pp * pp;
  const double det = gram_pp * gram_mm - gram_pm * gram_pm;
  return MixingCoefficients{mid_plus, mid_minus, gram_pp,
                            gram_pm,  gram_mm,   det,
                            pi_t};
}

std::array<std::array<double, 2>, 3> mixing_matrix(double pi_plus) {
  const MixingCoefficients m = mixing_coefficients(pi_plus);
  const double pp = pi_plus;
  const double pm = 1.0 - pi_plus;
  return {{{pp, pm}, {m.mid_plus, m.mid_minus}, {pm, pp}}};
}

ReconstructionCoefficients reconstruction_coefficients(double pi_plus,
                                                       double guard) {
  check_not_singular(pi_plus, guard);
  const MixingCoefficients m = mixing_coefficients(pi_plus);
  const double pp = pi_plus;
  const double pm = 1.0 - pi_plus;
  const double a = m.gram_pp;
  const double b = m.gram_pm;
  const double c = m.gram_mm;
  ReconstructionCoefficients r;
  r.plus = {(c * pp - b * pm) / m.det, (c * m.mid_plus - b * m.mid_minus) / m.det,
            (c * pm - b * pp) / m.det};
  r.minus = {(a * pm - b * pp) / m.det, (a * m.mid_minus - b * m.mid_plus) / m.det,
             (a * pp - b * pm) / m.det};
  return r;
}

RiskWeights risk_weights(double pi_plus, double pi_test, double guard) {
  check_probability(pi_test, "pi_test");
  const ReconstructionCoefficients r = reconstruction_coefficients(pi_plus, guard);
  RiskWeights w;
  w.w1_pos = pi_test * r.plus[0];
  w.w2_pos = pi_test * r.plus[1];
  w.w3_pos = pi_test * r.plus[2];
  w.w1_neg = (1.0 - pi_test) * r.minus[0];
  w.w2_neg = (1.0 - pi_test) * r.minus[1];
  w.w3_neg = (1.0 - pi_test) * r.minus[2];
  w.pi_test = pi_test;
  return w;
}

double bound_coefficient(double pi_plus, double pi_test, double guard) {
  const RiskWeights w = risk_weights(pi_plus, pi_test, guard);
  return std::abs(w.w1_pos) + std::abs(w.w1_neg) + std::abs(w.w2_pos) +
         std::abs(w.w2_neg) + std::abs(w.w3_pos) + std::abs(w.w3_neg);
}

double estimation_error_bound(const BoundParams& params, double pi_plus,
                              double pi_test, double guard) {
  if (params.sample_count == 0) {
    throw std::invalid_argument("sample_count must be positive");
  }
  if (!(params.delta > 0.0 && params.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(params.lipschitz > 0.0) || !(params.model_complexity > 0.0) ||
      !(params.loss_ceiling > 0.0)) {
    throw std::invalid_argument(
        "lipschitz, model_complexity and loss_ceiling must be positive");
  }
  const double n = static_cast<double>(params.sample_count);
  const double deviation =
      2.0 * params.lipschitz * params.model_complexity / std::sqrt(n) +
      std::sqrt(params.loss_ceiling * params.loss_ceiling *
                std::log(2.0 / params.delta) / (2.0 * n));
  return deviation * bound_coefficient(pi_plus, pi_test, guard);
}

}  // namespace tcc
