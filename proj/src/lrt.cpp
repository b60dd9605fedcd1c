#include "lrtbench/lrt.hpp"

#include <algorithm>
#include <cmath>

#include "lrtbench/error.hpp"
#include "lrtbench/parallel.hpp"

namespace lrtbench {

namespace {

void check_path(const TimeSeriesPath& path, const ModelPair& pair) {
  require(path.dim == pair.dim(), ErrorKind::dimension_mismatch,
          "path dimension " + std::to_string(path.dim) + " does not match model dimension " +
              std::to_string(pair.dim()));
  require(path.size() >= 2, ErrorKind::invalid_argument, "path needs at least two points");
  require(path.states.size() == path.size() * path.dim, ErrorKind::dimension_mismatch,
          "path state matrix has the wrong number of entries");
}

double finite_or_fail(double value, const char* what) {
  require(std::isfinite(value), ErrorKind::non_finite, std::string(what) + " is not finite");
  return value;
}

}  // namespace

std::string_view to_string(LrtMode mode) {
  switch (mode) {
    case LrtMode::hidden_truth: return "lrt-hidden-truth";
    case LrtMode::numerical: return "lrt-numerical";
    case LrtMode::exact_bm: return "lrt-exact-bm";
    case LrtMode::exact_ou: return "lrt-exact-ou";
  }
  return "unknown";
}

LrtMode parse_lrt_mode(std::string_view name) {
  if (name == "hidden" || name == "hidden-truth" || name == "lrt-hidden-truth")
    return LrtMode::hidden_truth;
  if (name == "numerical" || name == "lrt-numerical") return LrtMode::numerical;
  if (name == "exact-bm" || name == "lrt-exact-bm") return LrtMode::exact_bm;
  if (name == "exact-ou" || name == "lrt-exact-ou") return LrtMode::exact_ou;
  fail(ErrorKind::invalid_argument, "unknown LRT mode '" + std::string(name) + "'");
}

double loglik_ratio_numerical(const TimeSeriesPath& path, const ModelPair& pair) {
  check_path(path, pair);
  const std::size_t d = path.dim;
  std::vector<double> b0(d), b1(d), s(d);
  double total = 0.0;
  for (std::size_t l = 0; l + 1 < path.size(); ++l) {
    const double t = path.times[l];
    const double step = path.times[l + 1] - t;
    const auto x = path.row(l);
    const auto next = path.row(l + 1);
    drift(pair.spec0, t, x, b0);
    drift(pair.spec1, t, x, b1);
    diffusion_diagonal(pair.spec0, x, s);
    for (std::size_t i = 0; i < d; ++i) {
      const double variance = std::max(s[i] * s[i], kCovarianceFloor);
      const double increment = next[i] - x[i];
      const double diff = b1[i] - b0[i];
      const double quad = b1[i] * b1[i] - b0[i] * b0[i];
      total += diff * increment / variance - 0.5 * quad / variance * step;
    }
  }
  return finite_or_fail(total, "numerical log-likelihood ratio");
}

double loglik_ratio_exact_bm(const TimeSeriesPath& path, const ModelPair& pair) {
  require(pair.family() == ModelFamily::constant_drift, ErrorKind::family_mismatch,
          "exact-bm score needs the constant-drift family");
  check_path(path, pair);
  const std::size_t d = path.dim;
  const auto first = path.row(0);
  const auto last = path.row(path.size() - 1);
  const double span = path.times.back() - path.times.front();
  const auto& th0 = pair.spec0.theta;
  const auto& th1 = pair.spec1.theta;
  double linear = 0.0, norm1 = 0.0, norm0 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    linear += (th1[i] - th0[i]) * (last[i] - first[i]);
    norm1 += th1[i] * th1[i];
    norm0 += th0[i] * th0[i];
  }
  const double variance = pair.spec0.sigma * pair.spec0.sigma;
  return finite_or_fail((linear - 0.5 * (norm1 - norm0) * span) / variance,
                        "exact-bm log-likelihood ratio");
}

double ou_transition_variance(double theta, double sigma, double dt) {
  const double x = theta * dt;
  if (std::abs(x) < 1e-8) return sigma * sigma * dt;
  return sigma * sigma * std::expm1(2.0 * x) / (2.0 * theta);
}

double loglik_ratio_exact_ou(const TimeSeriesPath& path, const ModelPair& pair) {
  require(pair.family() == ModelFamily::ou, ErrorKind::family_mismatch,
          "exact-ou score needs the OU family");
  check_path(path, pair);
  const std::size_t steps = path.size() - 1;
  const double dt = (path.times.back() - path.times.front()) / static_cast<double>(steps);
  for (std::size_t l = 0; l < steps; ++l) {
    require(std::abs(path.times[l + 1] - path.times[l] - dt) <= 1e-9 * dt,
            ErrorKind::invalid_argument, "exact-ou score needs a uniform time grid");
  }
  const double sigma = pair.spec0.sigma;
  const double theta0 = pair.spec0.theta[0];
  const double theta1 = pair.spec1.theta[0];
  const double var0 = ou_transition_variance(theta0, sigma, dt);
  const double var1 = ou_transition_variance(theta1, sigma, dt);
  const double decay0 = std::exp(theta0 * dt);
  const double decay1 = std::exp(theta1 * dt);
  const std::size_t d = path.dim;

  double quadratic = 0.0;
  for (std::size_t l = 0; l < steps; ++l) {
    const auto x = path.row(l);
    const auto next = path.row(l + 1);
    double q0 = 0.0, q1 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double r0 = next[i] - decay0 * x[i];
      const double r1 = next[i] - decay1 * x[i];
      q0 += r0 * r0;
      q1 += r1 * r1;
    }
    quadratic += q0 / var0 - q1 / var1;
  }
  const double half_dl = 0.5 * static_cast<double>(d * steps);
  return finite_or_fail(half_dl * (std::log(var0) - std::log(var1)) + 0.5 * quadratic,
                        "exact-ou log-likelihood ratio");
}

double loglik_ratio(const TimeSeriesPath& path, const ModelPair& pair, LrtMode mode) {
  switch (mode) {
    case LrtMode::hidden_truth:
    case LrtMode::numerical: return loglik_ratio_numerical(path, pair);
    case LrtMode::exact_bm: return loglik_ratio_exact_bm(path, pair);
    case LrtMode::exact_ou: return loglik_ratio_exact_ou(path, pair);
  }
  return 0.0;
}

ScoreSet lrt_scores(const Dataset& dataset, const ModelPair& pair, LrtMode mode) {
  pair.validate();
  if (mode == LrtMode::hidden_truth) {
    require(dataset.has_fine(), ErrorKind::missing_data,
            "hidden-truth scores need the retained fine paths");
  }
  if (mode == LrtMode::exact_bm)
    require(pair.family() == ModelFamily::constant_drift, ErrorKind::family_mismatch,
            "exact-bm mode needs the constant-drift family");
  if (mode == LrtMode::exact_ou)
    require(pair.family() == ModelFamily::ou, ErrorKind::family_mismatch,
            "exact-ou mode needs the OU family");

  const auto& source = mode == LrtMode::hidden_truth ? dataset.fine_paths : dataset.paths;
  ScoreSet out;
  out.scores.resize(dataset.size());
  out.labels = dataset.labels;
  out.path_ids.resize(dataset.size());
  out.mode = std::string(to_string(mode));
  out.provenance = dataset.digest();
  parallel_for(dataset.size(), [&](std::size_t p) {
    out.scores[p] = loglik_ratio(source[p], pair, mode);
    out.path_ids[p] = p;
  });
  return out;
}

double lrt_posterior(double score) {
  if (score >= 0.0) return 1.0 / (1.0 + std::exp(-score));
  const double e = std::exp(score);
  return e / (1.0 + e);
}

double lrt_threshold(double k) {
  require(k > 0.0 && k < 1.0, ErrorKind::invalid_argument, "threshold k must lie in (0, 1)");
  return std::log(k) - std::log1p(-k);
}

}  // namespace lrtbench
