#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lrtbench {

/// Per-path classifier outputs on a common scale where larger means "more
/// like class theta_1". LRT scores are log-likelihood ratios; trained
/// classifiers contribute raw decision values.
struct ScoreSet {
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<std::size_t> path_ids;  // dataset row of each score
  std::string mode;                   // producing classifier
  std::string provenance;             // dataset content digest

  std::size_t size() const { return scores.size(); }
  std::size_t count(int label) const;
  /// Rows selected by position in this set.
  ScoreSet subset(std::span<const std::size_t> rows) const;
  /// Checks equal lengths and binary labels.
  void validate() const;
};

}  // namespace lrtbench
