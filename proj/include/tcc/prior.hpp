#pragma once

#include <array>
#include <cstddef>

namespace tcc {

// Width of the band around pi_plus = 0.5 inside which the mixture inversion
// is rejected: the determinant vanishes at 0.5 and the estimator variance
// blows up next to it.
inline constexpr double kDefaultSingularGuard = 0.005;

// Training prior and test prior. pi_test defaults to pi_plus; it may differ
// when the deployment class balance is known to have shifted.
struct ClassPrior {
  double pi_plus;
  double pi_test;
};

ClassPrior make_class_prior(double pi_plus);
ClassPrior make_class_prior(double pi_plus, double pi_test);

// Probability that a random triplet receives keep feedback:
// 1 - pi_plus * (1 - pi_plus), always in [0.75, 1].
double pi_t_from_prior(double pi_plus);

// Inverts pi_t_from_prior on the pi_plus > 0.5 branch: the larger root of
// pi^2 - pi + (1 - pi_t) = 0. Values of pi_t slightly below 0.75 (finite
// sample noise) are clamped to 0.75, giving 0.5; values below
// 0.75 - clamp_tol are rejected as inconsistent with the generation model.
double prior_from_pi_t(double pi_t, double clamp_tol = 0.05);

// Unbiased estimate of pi_t from the keep/flip counts.
double estimate_pi_t(std::size_t n_keep, std::size_t n_flip);

// Constants of the linear system tying the three pointwise marginals to the
// class conditionals. mid_plus/mid_minus are the mixture weights of the kept
// middle position; the gram_* entries form the Gram matrix of the 3x2 mixing
// matrix, whose determinant controls invertibility.
struct MixingCoefficients {
  double mid_plus;   // weight of p+ in the kept-middle marginal
  double mid_minus;  // weight of p-, equals 1 - mid_plus
  double gram_pp;
  double gram_pm;
  double gram_mm;
  double det;        // gram_pp * gram_mm - gram_pm^2; zero iff pi_plus = 0.5
  double pi_t;
};

MixingCoefficients mixing_coefficients(double pi_plus);

// The 3x2 matrix mapping (p+, p-) to the marginals of bag1, bag2, bag3.
// Row i holds the mixture weights of (p+, p-) in bag i+1.
std::array<std::array<double, 2>, 3> mixing_matrix(double pi_plus);

// Rows of the Moore-Penrose pseudo-inverse of the mixing matrix:
//   p+ = sum_i plus[i]  * q_i
//   p- = sum_i minus[i] * q_i
// where q_1, q_2, q_3 are the three pointwise marginals.
struct ReconstructionCoefficients {
  std::array<double, 3> plus;
  std::array<double, 3> minus;
};

ReconstructionCoefficients reconstruction_coefficients(
    double pi_plus, double guard = kDefaultSingularGuard);

// Signed coefficients of the unbiased risk estimator, one (pos, neg) pair
// per bag. Positive-class weights sum to pi_test, negative-class weights to
// 1 - pi_test; individual entries may be negative.
struct RiskWeights {
  double w1_pos, w1_neg;
  double w2_pos, w2_neg;
  double w3_pos, w3_neg;
  double pi_test;
};

RiskWeights risk_weights(double pi_plus, double pi_test,
                         double guard = kDefaultSingularGuard);

// Prior-dependent factor of the estimation error bound: the sum of the
// absolute values of the six risk weights. Grows without bound as pi_plus
// approaches 0.5, and is symmetric under relabeling the classes.
double bound_coefficient(double pi_plus, double pi_test,
                         double guard = kDefaultSingularGuard);

// Inputs of the estimation error bound that do not depend on the prior.
struct BoundParams {
  std::size_t sample_count;  // n
  double delta;              // confidence level, in (0, 1)
  double lipschitz;          // Lipschitz constant of the loss in its score
  double model_complexity;   // C_F with Rademacher complexity <= C_F / sqrt(n)
  double loss_ceiling;       // sup of the loss over bounded scores
};

// High-probability bound on the excess risk of the empirical minimizer:
//   (2 * rho * C_F / sqrt(n) + sqrt(C_l^2 * log(2/delta) / (2n)))
//     * bound_coefficient(pi_plus, pi_test).
double estimation_error_bound(const BoundParams& params, double pi_plus,
                              double pi_test,
                              double guard = kDefaultSingularGuard);

}  // namespace tcc
