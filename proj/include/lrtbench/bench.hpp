#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrtbench/metrics.hpp"
#include "lrtbench/models.hpp"
#include "lrtbench/rocket.hpp"
#include "lrtbench/scores.hpp"
#include "lrtbench/simulate.hpp"

namespace lrtbench {

/// One cell of the case matrix: model family plus the (d, L, t_L, dt) grid.
struct CaseSetting {
  char case_id = 'a';
  int index = 1;
  ModelFamily family = ModelFamily::constant_drift;
  std::size_t dim = 1;
  std::size_t steps = 10;
  double t_end = 1.0;
  double dt = 0.1;
  double delta = 0.01;
  ParameterTable overrides;  // applied on top of the family defaults

  ModelPair pair() const;
  SimConfig config(std::size_t paths, std::uint64_t seed) const;
  /// Short name such as "a1"; sweeps append their value.
  std::string name() const;
};

/// Resolves a case id in a..f and a setting index in 1..4.
CaseSetting resolve_case(char case_id, int index);
CaseSetting resolve_case(std::string_view case_id, int index);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Label-stratified random split; each class contributes round(n_c * fraction)
/// rows to the training side. Both sides come back sorted.
SplitIndices split(std::span<const int> labels, double train_fraction, std::uint64_t seed);

inline constexpr std::string_view kRocket = "rocket";

/// Canonical classifier names: lrt-hidden-truth, lrt-numerical, lrt-exact-bm,
/// lrt-exact-ou, rocket. Accepts the short forms hidden, numerical, exact
/// (resolved against the family), exact-bm and exact-ou.
std::vector<std::string> parse_classifiers(std::string_view list, ModelFamily family);

struct BenchOptions {
  std::size_t runs = 40;
  std::uint64_t seed = 0;
  std::vector<std::string> classifiers = {"lrt-hidden-truth", "lrt-numerical", "rocket"};
  std::size_t kernels = 10000;
  std::size_t paths = 2000;
  double train_fraction = 0.75;
  /// When nonzero, the test side is a separately generated set of this many
  /// paths that does not depend on `paths`; all of `paths` is used for training.
  std::size_t fixed_test_paths = 0;
  /// Draw a fresh dataset for every run instead of re-splitting one dataset.
  bool regenerate = false;
  RidgeOptions ridge;
  /// Externally produced scores keyed by classifier name; rows index the
  /// (single) dataset of the benchmark.
  std::map<std::string, ScoreSet> external;
};

/// Metric row. `scope` is "full" for scores over the whole dataset, "test"
/// for scores over the run's test side, "external" for imported scores.
struct RunRow {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::string classifier;
  std::string scope;
  double auc = 0.0;
  double acc_star = 0.0;
};

struct BenchmarkReport {
  std::string name;
  CaseSetting setting;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> classifiers;
  Manifest manifest;
  std::vector<RunRow> rows;
  /// One representative curve per classifier: the full dataset for LRT
  /// scores, the first run's test side for trained classifiers.
  std::map<std::string, RocCurve> curves;
  /// Scores behind each representative curve.
  std::map<std::string, ScoreSet> scores;
  /// First run's trained model, when ROCKET was selected.
  std::vector<RocketModel> rocket_models;

  /// Scope used for the per-classifier summary: "full" for training-free
  /// LRT classifiers, otherwise the classifier's own scope.
  std::string primary_scope(const std::string& classifier) const;
  /// Metric values per run in run order; metric is "auc" or "acc_star".
  std::vector<double> values(const std::string& classifier, const std::string& scope,
                             std::string_view metric) const;
  FiveNumberSummary summary(const std::string& classifier, std::string_view metric) const;
};

/// Runs the benchmark protocol for one setting. LRT classifiers score the
/// whole dataset once (no training) and their rows are replicated per run;
/// when a trained classifier is selected, LRT rows on each run's test side are
/// added as well so that comparisons use the same paths.
BenchmarkReport run_case(const CaseSetting& setting, const BenchOptions& options);

/// Same protocol on an existing dataset (no regeneration).
BenchmarkReport run_dataset(const Dataset& dataset, const CaseSetting& setting,
                            const BenchOptions& options);

enum class SweepKind { time_length, noise, training_size };
std::string_view to_string(SweepKind kind);
SweepKind parse_sweep_kind(std::string_view name);

/// Default values: t_L {2,4,8,16}, sigma {0.8,0.4,0.2,0.1},
/// training paths {500,1000,2000,4000}.
std::vector<double> default_sweep_values(SweepKind kind);

/// Setting for one sweep value derived from `base` (interacting particles with
/// d = 12, dt = 0.1 by default).
CaseSetting sweep_setting(SweepKind kind, double value, const CaseSetting& base);

/// One report per value. The training-size sweep trains on `value` paths and
/// tests on a fixed set of 500 paths at (t_L, sigma) = (2, 0.4).
std::vector<BenchmarkReport> sweep(SweepKind kind, std::span<const double> values,
                                   const CaseSetting& base, const BenchOptions& options);

/// Reads a scores CSV and checks it against `dataset`: matching digest, known
/// path ids and per-row labels equal to the dataset labels.
ScoreSet import_external_scores(const std::string& file, const Dataset& dataset);

}  // namespace lrtbench
