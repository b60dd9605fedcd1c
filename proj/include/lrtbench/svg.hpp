#pragma once

#include <map>
#include <string>
#include <vector>

#include "lrtbench/metrics.hpp"

namespace lrtbench {

/// Self-contained SVG 1.1 documents.

/// ROC curves of several classifiers on one set of axes, with the chance diagonal.
std::string roc_svg(const std::string& title, const std::map<std::string, RocCurve>& curves);

struct BoxSeries {
  std::string label;
  FiveNumberSummary summary;
};

/// One panel per metric, one box per series; whiskers at the non-outlier
/// extremes and outliers drawn as points.
std::string boxplot_svg(const std::string& title,
                        const std::vector<std::pair<std::string, std::vector<BoxSeries>>>& panels);

}  // namespace lrtbench
