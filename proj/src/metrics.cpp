#include "lrtbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lrtbench/error.hpp"

namespace lrtbench {

std::size_t ScoreSet::count(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

ScoreSet ScoreSet::subset(std::span<const std::size_t> rows) const {
  ScoreSet out;
  out.mode = mode;
  out.provenance = provenance;
  out.scores.reserve(rows.size());
  out.labels.reserve(rows.size());
  out.path_ids.reserve(rows.size());
  for (std::size_t r : rows) {
    require(r < size(), ErrorKind::invalid_argument, "subset row out of range");
    out.scores.push_back(scores[r]);
    out.labels.push_back(labels[r]);
    out.path_ids.push_back(path_ids.empty() ? r : path_ids[r]);
  }
  return out;
}

void ScoreSet::validate() const {
  require(scores.size() == labels.size(), ErrorKind::dimension_mismatch,
          "score and label counts differ");
  require(path_ids.empty() || path_ids.size() == scores.size(), ErrorKind::dimension_mismatch,
          "score and path id counts differ");
  for (int label : labels)
    require(label == 0 || label == 1, ErrorKind::invalid_argument, "labels must be 0 or 1");
}

ConfusionMatrix confusion(const ScoreSet& scores, double threshold) {
  scores.validate();
  require(scores.size() > 0, ErrorKind::invalid_argument, "confusion matrix of an empty set");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool rejected = scores.scores[i] > threshold;
    if (scores.labels[i] == 0) {
      (rejected ? cm.fn : cm.tp) += 1;
    } else {
      (rejected ? cm.tn : cm.fp) += 1;
    }
  }
  return cm;
}

RocCurve roc_curve(const ScoreSet& scores) {
  scores.validate();
  RocCurve curve;
  curve.n0 = scores.count(0);
  curve.n1 = scores.count(1);
  require(curve.n0 > 0 && curve.n1 > 0, ErrorKind::degenerate,
          "ROC curve needs both classes present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores.scores[a] < scores.scores[b]; });

  const double n0 = static_cast<double>(curve.n0);
  const double n1 = static_cast<double>(curve.n1);
  auto push = [&](double threshold, std::size_t a0, std::size_t a1) {
    if (!curve.points.empty() && curve.accepted0.back() == a0 && curve.accepted1.back() == a1)
      return;
    curve.thresholds.push_back(threshold);
    curve.accepted0.push_back(a0);
    curve.accepted1.push_back(a1);
    curve.points.push_back({static_cast<double>(a1) / n1, static_cast<double>(a0) / n0});
  };

  push(-std::numeric_limits<double>::infinity(), 0, 0);
  std::size_t a0 = 0, a1 = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double value = scores.scores[order[i]];
    while (i < order.size() && scores.scores[order[i]] == value) {
      (scores.labels[order[i]] == 0 ? a0 : a1) += 1;
      ++i;
    }
    push(value, a0, a1);
  }
  push(std::numeric_limits<double>::infinity(), a0, a1);
  return curve;
}

double auc(const RocCurve& curve) {
  // 2 * n0 * n1 * area, accumulated exactly in integers.
  unsigned long long twice_area = 0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto width = static_cast<unsigned long long>(curve.accepted1[i] - curve.accepted1[i - 1]);
    twice_area += width * (curve.accepted0[i] + curve.accepted0[i - 1]);
  }
  return static_cast<double>(twice_area) /
         (2.0 * static_cast<double>(curve.n0) * static_cast<double>(curve.n1));
}

MetricsSummary max_accuracy(const ScoreSet& scores) {
  const RocCurve curve = roc_curve(scores);
  const auto n0 = static_cast<long long>(curve.n0);
  const auto n1 = static_cast<long long>(curve.n1);
  // ACC - 1/2 = (a0/n0 - a1/n1)/2, compared through a common denominator.
  std::size_t best = 0;
  long long best_value = 0;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const long long value = static_cast<long long>(curve.accepted0[i]) * n1 -
                            static_cast<long long>(curve.accepted1[i]) * n0;
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  MetricsSummary summary;
  summary.acc_star = 0.5 + 0.5 * (curve.points[best].tpr - curve.points[best].fpr);
  summary.k_star = curve.thresholds[best];
  summary.fnr_at_k = 1.0 - curve.points[best].tpr;
  summary.tnr_at_k = 1.0 - curve.points[best].fpr;
  return summary;
}

MetricsSummary evaluate(const ScoreSet& scores) {
  MetricsSummary summary = max_accuracy(scores);
  summary.auc = auc(roc_curve(scores));
  return summary;
}

SamplingErrorEstimate sampling_error(double rate, std::size_t m, double epsilon) {
  require(m >= 1, ErrorKind::invalid_argument, "sampling error needs m >= 1");
  require(rate >= 0.0 && rate <= 1.0, ErrorKind::invalid_argument, "rate must lie in [0, 1]");
  require(epsilon > 0.0, ErrorKind::invalid_argument, "epsilon must be positive");
  const double md = static_cast<double>(m);
  SamplingErrorEstimate e;
  e.rate = rate;
  e.m = m;
  e.epsilon = epsilon;
  e.clt_std = std::sqrt(rate * (1.0 - rate) / md);
  e.hoeffding = 2.0 * std::exp(-md * epsilon * epsilon / 2.0);
  e.rule_of_thumb = 0.5 / std::sqrt(md);
  return e;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  require(!sorted.empty(), ErrorKind::invalid_argument, "quantile of an empty list");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

FiveNumberSummary summarize_runs(std::span<const double> values) {
  require(!values.empty(), ErrorKind::invalid_argument, "summary of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  FiveNumberSummary s;
  s.count = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.max;
  s.whisker_high = s.min;
  for (double v : sorted) {
    if (v < low_fence || v > high_fence) {
      s.outliers.push_back(v);
    } else {
      s.whisker_low = std::min(s.whisker_low, v);
      s.whisker_high = std::max(s.whisker_high, v);
    }
  }
  return s;
}

}  // namespace lrtbench
