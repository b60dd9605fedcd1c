#include "lrtbench/gaussian_analytic.hpp"

#include <cmath>
#include <numbers>

#include "lrtbench/error.hpp"
#include "lrtbench/lrt.hpp"
#include "lrtbench/parallel.hpp"

namespace lrtbench {

namespace {

void require_bm(const ModelPair& pair, double t_span) {
  pair.validate();
  require(pair.family() == ModelFamily::constant_drift, ErrorKind::family_mismatch,
          "closed-form rates need the constant-drift family");
  require(std::isfinite(t_span) && t_span > 0.0, ErrorKind::invalid_argument,
          "time span must be positive");
}

double binomial_se(double rate, std::size_t n) {
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(n));
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

BmClosedForm bm_closed_form(const ModelPair& pair, double t_span) {
  require_bm(pair, t_span);
  double dist2 = 0.0;
  for (std::size_t i = 0; i < pair.dim(); ++i) {
    const double diff = pair.spec1.theta[i] - pair.spec0.theta[i];
    dist2 += diff * diff;
  }
  BmClosedForm form;
  form.mean_shift = 0.5 * dist2 * t_span;
  form.spread = pair.spec0.sigma * std::sqrt(dist2) * std::sqrt(t_span);
  return form;
}

RatePair bm_rates(const ModelPair& pair, double t_span, double k) {
  const BmClosedForm form = bm_closed_form(pair, t_span);
  require(form.spread > 0.0, ErrorKind::degenerate,
          "identical drifts: LRT rates are degenerate in the threshold");
  const double c = lrt_threshold(k);
  RatePair rates;
  rates.k = k;
  rates.fnr = normal_tail((c + form.mean_shift) / form.spread);
  rates.tnr = normal_tail((c - form.mean_shift) / form.spread);
  return rates;
}

OptimalAccuracy bm_optimal_accuracy(const ModelPair& pair, double t_span) {
  const BmClosedForm form = bm_closed_form(pair, t_span);
  return {normal_cdf(form.ratio()), 0.5};
}

double bm_auc(const ModelPair& pair, double t_span) {
  const BmClosedForm form = bm_closed_form(pair, t_span);
  return normal_cdf(std::numbers::sqrt2 * form.ratio());
}

TimeSeriesPath sample_ou_exact_path(const ModelSpec& spec, std::span<const double> x0, double dt,
                                    std::size_t steps, RandomStream& stream) {
  require(spec.family == ModelFamily::ou, ErrorKind::family_mismatch,
          "exact sampling needs the OU family");
  require(x0.size() == spec.dim, ErrorKind::dimension_mismatch, "initial state dimension");
  const double decay = std::exp(spec.theta[0] * dt);
  const double scale = std::sqrt(ou_transition_variance(spec.theta[0], spec.sigma, dt));
  TimeSeriesPath path;
  path.dim = spec.dim;
  path.grid = GridKind::observed;
  path.times.resize(steps + 1);
  path.states.resize((steps + 1) * spec.dim);
  for (std::size_t l = 0; l <= steps; ++l) path.times[l] = static_cast<double>(l) * dt;
  std::copy(x0.begin(), x0.end(), path.states.begin());
  for (std::size_t l = 0; l < steps; ++l) {
    const auto x = path.row(l);
    auto next = path.row(l + 1);
    for (std::size_t i = 0; i < spec.dim; ++i) next[i] = decay * x[i] + scale * stream.normal();
  }
  return path;
}

RatePair ou_rates_montecarlo(const ModelPair& pair, const SimConfig& config, double k,
                             std::size_t n, std::uint64_t seed) {
  pair.validate();
  require(pair.family() == ModelFamily::ou, ErrorKind::family_mismatch,
          "Monte-Carlo OU rates need the OU family");
  require(n >= 100, ErrorKind::invalid_argument, "Monte-Carlo rates need n >= 100");
  const double c = lrt_threshold(k);
  const std::size_t d = pair.dim();

  std::vector<unsigned char> rejected(2 * n);
  parallel_for(2 * n, [&](std::size_t job) {
    const int label = job < n ? 0 : 1;
    const auto index = static_cast<std::uint32_t>(job % n);
    RandomStream stream(seed, StreamDomain::monte_carlo, static_cast<std::uint32_t>(label), index);
    std::vector<double> x0(d);
    for (auto& v : x0) v = stream.normal();
    const TimeSeriesPath path =
        sample_ou_exact_path(pair[label], x0, config.dt, config.steps, stream);
    rejected[job] = loglik_ratio_exact_ou(path, pair) > c ? 1 : 0;
  });

  std::size_t fn = 0, tn = 0;
  for (std::size_t j = 0; j < n; ++j) fn += rejected[j];
  for (std::size_t j = n; j < 2 * n; ++j) tn += rejected[j];
  RatePair rates;
  rates.k = k;
  rates.samples = n;
  rates.fnr = static_cast<double>(fn) / static_cast<double>(n);
  rates.tnr = static_cast<double>(tn) / static_cast<double>(n);
  rates.fnr_se = binomial_se(rates.fnr, n);
  rates.tnr_se = binomial_se(rates.tnr, n);
  return rates;
}

}  // namespace lrtbench
