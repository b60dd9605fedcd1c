#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrtbench/models.hpp"
#include "lrtbench/rng.hpp"
#include "lrtbench/simulate.hpp"

namespace lrtbench {

/// Standard normal CDF and upper tail, via erfc.
double normal_cdf(double x);
double normal_tail(double x);

/// Law of the Brownian-motion log-likelihood ratio: -m + v Z under theta_0,
/// m + v Z under theta_1.
struct BmClosedForm {
  double mean_shift = 0.0;  // m_l = |theta1 - theta0|^2 t / 2
  double spread = 0.0;      // v_l = sigma |theta1 - theta0| sqrt(t)

  /// m_l / v_l, or 0 when the classes coincide.
  double ratio() const { return spread > 0.0 ? mean_shift / spread : 0.0; }
};

BmClosedForm bm_closed_form(const ModelPair& pair, double t_span);

/// FNR alpha^0 = P(reject | theta_0) and TNR alpha^1 = P(reject | theta_1) at
/// threshold k. Standard errors are filled for Monte-Carlo estimates only.
struct RatePair {
  double fnr = 0.0;
  double tnr = 0.0;
  double k = 0.5;
  double fnr_se = 0.0;
  double tnr_se = 0.0;
  std::size_t samples = 0;  // per class; 0 for closed forms

  double accuracy() const { return 0.5 * (1.0 - fnr + tnr); }
};

RatePair bm_rates(const ModelPair& pair, double t_span, double k);

struct OptimalAccuracy {
  double acc_star = 0.5;
  double k_star = 0.5;
};

/// ACC* = Phi(m/v), attained at c_k = 0 (k* = 1/2).
OptimalAccuracy bm_optimal_accuracy(const ModelPair& pair, double t_span);

/// Binormal AUC of the two equal-variance score laws: Phi(sqrt(2) m / v).
double bm_auc(const ModelPair& pair, double t_span);

/// One OU path drawn from the exact transition N(e^{theta dt} x, s^2 I).
TimeSeriesPath sample_ou_exact_path(const ModelSpec& spec, std::span<const double> x0, double dt,
                                    std::size_t steps, RandomStream& stream);

/// Monte-Carlo FNR/TNR of the exact OU likelihood-ratio test: n exact paths per
/// class, x0 ~ N(0, I_d), thresholded at c_k. Binomial standard errors.
RatePair ou_rates_montecarlo(const ModelPair& pair, const SimConfig& config, double k,
                             std::size_t n, std::uint64_t seed);

}  // namespace lrtbench
