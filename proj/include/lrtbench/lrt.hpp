#pragma once

#include <string_view>

#include "lrtbench/models.hpp"
#include "lrtbench/scores.hpp"
#include "lrtbench/simulate.hpp"

namespace lrtbench {

enum class LrtMode { hidden_truth, numerical, exact_bm, exact_ou };

std::string_view to_string(LrtMode mode);
LrtMode parse_lrt_mode(std::string_view name);

struct LrtScore {
  double value = 0.0;
  LrtMode mode = LrtMode::numerical;
};

/// Diagonal entries of Sigma(x) are floored here before inversion.
inline constexpr double kCovarianceFloor = 1e-8;

/// Euler-Maruyama log-likelihood ratio log p(x|theta1)/p(x|theta0) along the
/// path's own grid, drifts evaluated at the left endpoint (t_l, X_l).
double loglik_ratio_numerical(const TimeSeriesPath& path, const ModelPair& pair);

/// Closed form for Brownian motion with constant drift; depends only on the
/// endpoints.
double loglik_ratio_exact_bm(const TimeSeriesPath& path, const ModelPair& pair);

/// Exact Gaussian transition-density ratio for the OU pair on a uniform grid.
double loglik_ratio_exact_ou(const TimeSeriesPath& path, const ModelPair& pair);

/// Conditional variance of X_{t+dt} given X_t for dX = theta X dt + sigma dB:
/// sigma^2 (e^{2 theta dt} - 1) / (2 theta), with the theta -> 0 limit sigma^2 dt.
double ou_transition_variance(double theta, double sigma, double dt);

double loglik_ratio(const TimeSeriesPath& path, const ModelPair& pair, LrtMode mode);

/// Scores every path of the dataset in dataset order. hidden_truth uses the
/// retained fine paths; the others use the observed paths. No training.
ScoreSet lrt_scores(const Dataset& dataset, const ModelPair& pair, LrtMode mode);

/// 1 / (1 + e^{-l}); {posterior > k} is the same event as {l > c_k}.
double lrt_posterior(double score);

/// c_k = log(k / (1 - k)).
double lrt_threshold(double k);

}  // namespace lrtbench
