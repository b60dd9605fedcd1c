#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "lrtbench/scores.hpp"

namespace lrtbench {

/// Counts with theta_0 as the positive class. A path is rejected (declared
/// theta_1) iff its score is strictly above the threshold.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  double fnr() const { return ratio(fn, tp + fn); }
  double tnr() const { return ratio(tn, tn + fp); }

 private:
  static double ratio(std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  }
};

ConfusionMatrix confusion(const ScoreSet& scores, double threshold);

struct RocPoint {
  double fpr = 0.0;  // 1 - alpha^1
  double tpr = 0.0;  // 1 - alpha^0
};

/// ROC swept over -inf, every distinct score, +inf; consecutive duplicate
/// points are collapsed. `accepted0/1` hold the exact counts behind each point.
struct RocCurve {
  std::vector<RocPoint> points;
  std::vector<double> thresholds;
  std::vector<std::size_t> accepted0;
  std::vector<std::size_t> accepted1;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
};

RocCurve roc_curve(const ScoreSet& scores);

/// Trapezoidal area, evaluated in integer counts so that it equals the
/// Mann-Whitney statistic P(S1 > S0) + P(S1 = S0)/2 exactly.
double auc(const RocCurve& curve);

struct MetricsSummary {
  double auc = 0.5;
  double acc_star = 0.5;
  double k_star = -std::numeric_limits<double>::infinity();  // on the score scale
  double fnr_at_k = 1.0;
  double tnr_at_k = 1.0;
};

/// Maximal balanced accuracy (1 - alpha^0 + alpha^1)/2 over the ROC threshold
/// sweep; ties go to the smallest threshold. `auc` is left at its default.
MetricsSummary max_accuracy(const ScoreSet& scores);

/// AUC and ACC* together.
MetricsSummary evaluate(const ScoreSet& scores);

struct SamplingErrorEstimate {
  double rate = 0.0;
  std::size_t m = 0;
  double epsilon = 0.0;
  double clt_std = 0.0;        // sqrt(rate (1 - rate) / m)
  double hoeffding = 0.0;      // 2 exp(-m eps^2 / 2)
  double rule_of_thumb = 0.0;  // 0.5 / sqrt(m)
};

SamplingErrorEstimate sampling_error(double rate, std::size_t m, double epsilon);

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;   // smallest non-outlier
  double whisker_high = 0.0;  // largest non-outlier
  std::vector<double> outliers;
  std::size_t count = 0;
};

/// Linear-interpolation (inclusive) quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double p);

/// Box-plot statistics; outliers lie beyond 1.5 IQR from the quartiles.
FiveNumberSummary summarize_runs(std::span<const double> values);

}  // namespace lrtbench
