#include "lrtbench/bench.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lrtbench/error.hpp"
#include "lrtbench/io.hpp"
#include "lrtbench/lrt.hpp"
#include "lrtbench/rng.hpp"
#include "lrtbench/text.hpp"

namespace lrtbench {

namespace {

// Seed tags for derive_seed.
constexpr std::uint64_t kDatasetTag = 1;
constexpr std::uint64_t kRunTag = 2;
constexpr std::uint64_t kTestSetTag = 3;
constexpr std::uint64_t kSplitTag = 11;
constexpr std::uint64_t kKernelTag = 12;
constexpr std::uint64_t kRidgeTag = 13;

constexpr double kDefaultDelta = 0.01;

struct Row {
  std::size_t dim;
  std::array<std::size_t, 4> steps;
  std::array<double, 4> t_end;
  std::array<double, 4> dt;
};

Row table_row(char id) {
  switch (id) {
    case 'a': return {1, {10, 20, 40, 80}, {1, 2, 4, 8}, {0.1, 0.1, 0.1, 0.1}};
    case 'b': return {1, {20, 40, 80, 160}, {2, 4, 8, 16}, {0.1, 0.1, 0.1, 0.1}};
    case 'c': return {1, {20, 20, 20, 20}, {2, 2, 2, 2}, {0.1, 0.1, 0.1, 0.1}};
    case 'd': return {6, {20, 20, 20, 20}, {2, 2, 2, 2}, {0.1, 0.1, 0.1, 0.1}};
    case 'e': return {1, {5, 10, 20, 40}, {1, 1, 1, 1}, {0.2, 0.1, 0.05, 0.025}};
    case 'f': return {24, {10, 20, 40, 80}, {4, 4, 4, 4}, {0.4, 0.2, 0.1, 0.05}};
    default: fail(ErrorKind::invalid_argument, std::string("unknown case id '") + id + "'");
  }
}

ModelFamily case_family(char id) {
  switch (id) {
    case 'a': return ModelFamily::constant_drift;
    case 'b': return ModelFamily::potential_gradient;
    case 'c': return ModelFamily::ou;
    case 'd':
    case 'f': return ModelFamily::interacting_particles;
    default: return ModelFamily::linear_nonlinear;
  }
}

bool is_lrt(const std::string& classifier) { return classifier.starts_with("lrt-"); }

LrtMode lrt_mode_of(const std::string& classifier) {
  return parse_lrt_mode(std::string_view(classifier).substr(4));
}

void add_metric_row(BenchmarkReport& report, std::size_t run, std::uint64_t seed,
                    const std::string& classifier, const std::string& scope,
                    const MetricsSummary& m) {
  report.rows.push_back({run, seed, classifier, scope, m.auc, m.acc_star});
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
  return out;
}

}  // namespace

ModelPair CaseSetting::pair() const {
  ParameterTable table = overrides;
  if (family == ModelFamily::interacting_particles) {
    if (!table.contains("N")) table["N"] = std::to_string(dim / 2);
    if (!table.contains("d1")) table["d1"] = "2";
  } else if (!table.contains("d")) {
    table["d"] = std::to_string(dim);
  }
  return make_model_pair(family, table);
}

SimConfig CaseSetting::config(std::size_t paths, std::uint64_t seed) const {
  return SimConfig::from_grid(delta, dt, steps, paths, seed);
}

std::string CaseSetting::name() const { return std::string(1, case_id) + std::to_string(index); }

CaseSetting resolve_case(char case_id, int index) {
  const Row row = table_row(case_id);
  require(index >= 1 && index <= 4, ErrorKind::invalid_argument,
          "setting index must be 1..4, got " + std::to_string(index));
  const auto i = static_cast<std::size_t>(index - 1);
  CaseSetting setting;
  setting.case_id = case_id;
  setting.index = index;
  setting.family = case_family(case_id);
  setting.dim = row.dim;
  if (case_id == 'c') setting.dim = std::size_t{1} << i;
  if (case_id == 'd') setting.dim = 6 << i;
  setting.steps = row.steps[i];
  setting.t_end = row.t_end[i];
  setting.dt = row.dt[i];
  // dt = 0.025 is not a multiple of 0.01; halve the fine step.
  setting.delta = case_id == 'e' && index == 4 ? 0.005 : kDefaultDelta;
  return setting;
}

CaseSetting resolve_case(std::string_view case_id, int index) {
  require(case_id.size() == 1, ErrorKind::invalid_argument,
          "unknown case id '" + std::string(case_id) + "'");
  return resolve_case(case_id[0], index);
}

SplitIndices split(std::span<const int> labels, double train_fraction, std::uint64_t seed) {
  require(train_fraction > 0.0 && train_fraction < 1.0, ErrorKind::invalid_argument,
          "train fraction must lie in (0, 1)");
  SplitIndices out;
  for (int label = 0; label < 2; ++label) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) members.push_back(i);
    RandomStream stream(seed, StreamDomain::split, static_cast<std::uint32_t>(label), 0);
    for (std::size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[stream.below(i)]);
    const auto n_train = static_cast<std::size_t>(
        std::llround(static_cast<double>(members.size()) * train_fraction));
    require(n_train >= 1 && n_train < members.size(), ErrorKind::invalid_argument,
            "train fraction " + format_double(train_fraction) + " leaves an empty side for class " +
                std::to_string(label));
    out.train.insert(out.train.end(), members.begin(), members.begin() + n_train);
    out.test.insert(out.test.end(), members.begin() + n_train, members.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::vector<std::string> parse_classifiers(std::string_view list, ModelFamily family) {
  std::vector<std::string> out;
  for (const std::string& raw : split(list, ',')) {
    std::string item(trim(raw));
    if (item.empty()) continue;
    if (item.starts_with("lrt-")) item = item.substr(4);
    std::string name;
    if (item == "rocket") {
      name = std::string(kRocket);
    } else if (item == "exact") {
      require(family == ModelFamily::constant_drift || family == ModelFamily::ou,
              ErrorKind::family_mismatch,
              "exact likelihood ratio exists only for constant-drift and ou families");
      name = family == ModelFamily::ou ? "lrt-exact-ou" : "lrt-exact-bm";
    } else {
      name = std::string(to_string(parse_lrt_mode(item)));
    }
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  require(!out.empty(), ErrorKind::invalid_argument, "empty classifier selection");
  return out;
}

std::string BenchmarkReport::primary_scope(const std::string& classifier) const {
  for (const RunRow& row : rows)
    if (row.classifier == classifier && row.scope != "test") return row.scope;
  return "test";
}

std::vector<double> BenchmarkReport::values(const std::string& classifier,
                                            const std::string& scope,
                                            std::string_view metric) const {
  require(metric == "auc" || metric == "acc_star", ErrorKind::invalid_argument,
          "unknown metric '" + std::string(metric) + "'");
  std::vector<double> out;
  for (const RunRow& row : rows)
    if (row.classifier == classifier && row.scope == scope)
      out.push_back(metric == "auc" ? row.auc : row.acc_star);
  return out;
}

FiveNumberSummary BenchmarkReport::summary(const std::string& classifier,
                                           std::string_view metric) const {
  const std::vector<double> v = values(classifier, primary_scope(classifier), metric);
  return summarize_runs(v);
}

namespace {

struct RunContext {
  const Dataset* data = nullptr;  // dataset the run scores
  const Dataset* test = nullptr;  // separate test set, or null
};

void score_run(BenchmarkReport& report, const BenchOptions& options,
               const RunContext& context, std::size_t run, std::uint64_t run_seed) {
  const Dataset& data = *context.data;
  const bool trained = std::find(options.classifiers.begin(), options.classifiers.end(),
                                 std::string(kRocket)) != options.classifiers.end();

  if (!trained) return;
  // LRT on the same test paths as the trained classifiers.
  const Dataset& lrt_set = context.test ? *context.test : data;
  std::map<std::string, ScoreSet> lrt;
  for (const std::string& c : options.classifiers)
    if (is_lrt(c)) lrt[c] = lrt_scores(lrt_set, lrt_set.pair, lrt_mode_of(c));

  std::vector<std::size_t> train_rows, test_rows;
  const Dataset& test_set = context.test ? *context.test : data;
  if (context.test) {
    train_rows.resize(data.size());
    test_rows.resize(context.test->size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) train_rows[i] = i;
    for (std::size_t i = 0; i < test_rows.size(); ++i) test_rows[i] = i;
  } else {
    SplitIndices s = split(data.labels, options.train_fraction, derive_seed(run_seed, kSplitTag));
    train_rows = std::move(s.train);
    test_rows = std::move(s.test);
  }

  for (const auto& [c, scores] : lrt) {
    add_metric_row(report, run, run_seed, c, "test", evaluate(scores.subset(test_rows)));
  }

  const KernelSet kernels = sample_kernels(options.kernels, data.paths.front().size(),
                                           rocket_channels(data), derive_seed(run_seed, kKernelTag));
  std::vector<TimeSeriesPath> train_paths, test_paths;
  std::vector<int> train_labels, test_labels;
  for (std::size_t i : train_rows) {
    train_paths.push_back(data.paths[i]);
    train_labels.push_back(data.labels[i]);
  }
  for (std::size_t i : test_rows) {
    test_paths.push_back(test_set.paths[i]);
    test_labels.push_back(test_set.labels[i]);
  }
  const FeatureMatrix train_features = featurize(train_paths, kernels);
  RidgeOptions ridge = options.ridge;
  ridge.seed = derive_seed(run_seed, kRidgeTag);
  const LinearClassifier model = fit_ridge(train_features, train_labels, ridge);
  const FeatureMatrix test_features = featurize(test_paths, kernels);
  ScoreSet scores = predict_scores(model, test_features, test_labels, test_rows);
  scores.provenance = test_set.digest();
  add_metric_row(report, run, run_seed, std::string(kRocket), "test", evaluate(scores));
  if (run == 0) {
    report.curves[std::string(kRocket)] = roc_curve(scores);
    report.scores[std::string(kRocket)] = std::move(scores);
    report.rocket_models = {RocketModel{kernels, model}};
  }
}

BenchmarkReport start_report(const CaseSetting& setting, const BenchOptions& options,
                             const Manifest& dataset_manifest) {
  require(options.runs >= 1, ErrorKind::invalid_argument, "runs must be at least 1");
  require(!options.classifiers.empty() || !options.external.empty(), ErrorKind::invalid_argument,
          "empty classifier selection");
  BenchmarkReport report;
  report.name = setting.name();
  report.setting = setting;
  report.runs = options.runs;
  report.seed = options.seed;
  report.classifiers = options.classifiers;
  for (const auto& [name, scores] : options.external) report.classifiers.push_back(name);
  report.manifest = dataset_manifest;
  report.manifest["bench.case"] = std::string(1, setting.case_id);
  report.manifest["bench.setting"] = std::to_string(setting.index);
  report.manifest["bench.name"] = report.name;
  report.manifest["bench.runs"] = std::to_string(options.runs);
  report.manifest["bench.seed"] = std::to_string(options.seed);
  report.manifest["bench.classifiers"] = join(report.classifiers);
  report.manifest["bench.kernels"] = std::to_string(options.kernels);
  report.manifest["bench.train_fraction"] = format_double(options.train_fraction);
  report.manifest["bench.fixed_test_paths"] = std::to_string(options.fixed_test_paths);
  report.manifest["bench.regenerate"] = options.regenerate ? "1" : "0";
  report.manifest["bench.ridge_lambdas"] = format_list(options.ridge.lambdas);
  report.manifest["bench.ridge_folds"] = std::to_string(options.ridge.folds);
  for (const auto& [name, scores] : options.external)
    report.manifest["bench.external." + name] = scores.provenance;
  return report;
}

bool wants_fine(const BenchOptions& options) {
  return std::find(options.classifiers.begin(), options.classifiers.end(), "lrt-hidden-truth") !=
         options.classifiers.end();
}

template <class F>
void annotate(const CaseSetting& setting, std::size_t run, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(e.what()) + " [case " + std::string(1, setting.case_id) +
                              ", setting " + std::to_string(setting.index) + ", run " +
                              std::to_string(run) + "]");
  }
}

// LRT rows over the full scored set, replicated for every run.
void replicate_full_lrt(BenchmarkReport& report, const BenchOptions& options,
                        const Dataset& lrt_set, const std::vector<std::uint64_t>& run_seeds) {
  for (const std::string& c : options.classifiers) {
    if (!is_lrt(c)) continue;
    const ScoreSet scores = lrt_scores(lrt_set, lrt_set.pair, lrt_mode_of(c));
    const MetricsSummary m = evaluate(scores);
    report.curves[c] = roc_curve(scores);
    report.scores[c] = scores;
    for (std::size_t r = 0; r < run_seeds.size(); ++r)
      add_metric_row(report, r, run_seeds[r], c, "full", m);
  }
}

void add_external(BenchmarkReport& report, const BenchOptions& options, const Dataset& dataset,
                  const std::vector<std::uint64_t>& run_seeds) {
  for (const auto& [name, scores] : options.external) {
    require(scores.provenance == dataset.digest(), ErrorKind::digest_mismatch,
            "external scores '" + name + "' reference dataset " + scores.provenance +
                ", benchmark dataset is " + dataset.digest());
    ScoreSet named = scores;
    named.mode = name;
    const MetricsSummary m = evaluate(named);
    report.curves[name] = roc_curve(named);
    report.scores[name] = named;
    for (std::size_t r = 0; r < run_seeds.size(); ++r)
      add_metric_row(report, r, run_seeds[r], name, "external", m);
  }
}

void sort_rows(BenchmarkReport& report) {
  std::stable_sort(report.rows.begin(), report.rows.end(), [&](const RunRow& a, const RunRow& b) {
    if (a.run != b.run) return a.run < b.run;
    const auto order = [&](const std::string& c) {
      return std::find(report.classifiers.begin(), report.classifiers.end(), c) -
             report.classifiers.begin();
    };
    if (a.classifier != b.classifier) return order(a.classifier) < order(b.classifier);
    return a.scope < b.scope;
  });
}

}  // namespace

BenchmarkReport run_dataset(const Dataset& dataset, const CaseSetting& setting,
                            const BenchOptions& options) {
  BenchmarkReport report = start_report(setting, options, dataset.manifest);
  std::vector<std::uint64_t> run_seeds(options.runs);
  for (std::size_t r = 0; r < options.runs; ++r) run_seeds[r] = derive_seed(options.seed, kRunTag, r);
  annotate(setting, 0, [&] { replicate_full_lrt(report, options, dataset, run_seeds); });
  add_external(report, options, dataset, run_seeds);
  RunContext context{&dataset, nullptr};
  for (std::size_t r = 0; r < options.runs; ++r)
    annotate(setting, r, [&] { score_run(report, options, context, r, run_seeds[r]); });
  sort_rows(report);
  return report;
}

BenchmarkReport run_case(const CaseSetting& setting, const BenchOptions& options) {
  const ModelPair pair = setting.pair();
  const bool fine = wants_fine(options);
  require(!(options.regenerate && !options.external.empty()), ErrorKind::invalid_argument,
          "external scores need a fixed dataset");
  require(!(options.regenerate && options.fixed_test_paths > 0), ErrorKind::invalid_argument,
          "a fixed test set cannot be combined with regeneration");

  if (options.fixed_test_paths > 0) {
    Dataset train, test;
    annotate(setting, 0, [&] {
      train = generate_dataset(pair, setting.config(options.paths, derive_seed(options.seed, kDatasetTag)),
                               false);
      test = generate_dataset(
          pair, setting.config(options.fixed_test_paths, derive_seed(options.seed, kTestSetTag)), fine);
    });
    Manifest manifest = test.manifest;
    manifest["bench.train_digest"] = train.digest();
    manifest["bench.train_seed"] = train.manifest.at("sim.seed");
    manifest["bench.train_paths"] = std::to_string(options.paths);
    BenchmarkReport report = start_report(setting, options, manifest);
    std::vector<std::uint64_t> run_seeds(options.runs);
    for (std::size_t r = 0; r < options.runs; ++r)
      run_seeds[r] = derive_seed(options.seed, kRunTag, r);
    annotate(setting, 0, [&] { replicate_full_lrt(report, options, test, run_seeds); });
    add_external(report, options, test, run_seeds);
    RunContext context{&train, &test};
    for (std::size_t r = 0; r < options.runs; ++r)
      annotate(setting, r, [&] { score_run(report, options, context, r, run_seeds[r]); });
    sort_rows(report);
    return report;
  }

  if (!options.regenerate) {
    Dataset dataset;
    annotate(setting, 0, [&] {
      dataset = generate_dataset(
          pair, setting.config(options.paths, derive_seed(options.seed, kDatasetTag)), fine);
    });
    return run_dataset(dataset, setting, options);
  }

  BenchmarkReport report;
  for (std::size_t r = 0; r < options.runs; ++r) {
    const std::uint64_t run_seed = derive_seed(options.seed, kRunTag, r);
    annotate(setting, r, [&] {
      const Dataset dataset = generate_dataset(
          pair, setting.config(options.paths, derive_seed(options.seed, kDatasetTag, r)), fine);
      if (r == 0) report = start_report(setting, options, dataset.manifest);
      report.manifest["bench.dataset_digest." + std::to_string(r)] = dataset.digest();
      for (const std::string& c : options.classifiers) {
        if (!is_lrt(c)) continue;
        const ScoreSet scores = lrt_scores(dataset, pair, lrt_mode_of(c));
        add_metric_row(report, r, run_seed, c, "full", evaluate(scores));
        if (r == 0) {
          report.curves[c] = roc_curve(scores);
          report.scores[c] = scores;
        }
      }
      RunContext context{&dataset, nullptr};
      score_run(report, options, context, r, run_seed);
    });
  }
  sort_rows(report);
  return report;
}

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::time_length: return "time-length";
    case SweepKind::noise: return "noise";
    case SweepKind::training_size: return "training-size";
  }
  return "unknown";
}

SweepKind parse_sweep_kind(std::string_view name) {
  if (name == "time-length") return SweepKind::time_length;
  if (name == "noise") return SweepKind::noise;
  if (name == "training-size") return SweepKind::training_size;
  fail(ErrorKind::invalid_argument, "unknown sweep kind '" + std::string(name) + "'");
}

std::vector<double> default_sweep_values(SweepKind kind) {
  switch (kind) {
    case SweepKind::time_length: return {2, 4, 8, 16};
    case SweepKind::noise: return {0.8, 0.4, 0.2, 0.1};
    case SweepKind::training_size: return {500, 1000, 2000, 4000};
  }
  return {};
}

CaseSetting sweep_setting(SweepKind kind, double value, const CaseSetting& base) {
  require(std::isfinite(value) && value > 0.0, ErrorKind::invalid_argument,
          "sweep values must be positive, got " + format_double(value));
  CaseSetting setting = base;
  switch (kind) {
    case SweepKind::time_length: {
      const double steps = value / base.dt;
      require(std::abs(steps - std::round(steps)) < 1e-9 * std::max(1.0, steps) && steps >= 1.0,
              ErrorKind::invalid_argument,
              "t_L " + format_double(value) + " is not a multiple of dt " + format_double(base.dt));
      setting.steps = static_cast<std::size_t>(std::llround(steps));
      setting.t_end = value;
      break;
    }
    case SweepKind::noise:
      setting.overrides["sigma"] = format_double(value);
      break;
    case SweepKind::training_size: {
      require(value == std::floor(value) && value >= 4 &&
                  static_cast<long long>(value) % 2 == 0,
              ErrorKind::invalid_argument,
              "training size must be an even integer >= 4, got " + format_double(value));
      setting.steps = static_cast<std::size_t>(std::llround(2.0 / base.dt));
      setting.t_end = 2.0;
      setting.overrides["sigma"] = "0.4";
      break;
    }
  }
  return setting;
}

std::vector<BenchmarkReport> sweep(SweepKind kind, std::span<const double> values,
                                   const CaseSetting& base, const BenchOptions& options) {
  require(!values.empty(), ErrorKind::invalid_argument, "sweep needs at least one value");
  std::vector<BenchmarkReport> reports;
  for (double value : values) {
    const CaseSetting setting = sweep_setting(kind, value, base);
    BenchOptions opts = options;
    if (kind == SweepKind::training_size) {
      opts.paths = static_cast<std::size_t>(value);
      opts.fixed_test_paths = 500;
    }
    BenchmarkReport report = run_case(setting, opts);
    report.name = setting.name() + "-" + std::string(to_string(kind)) + "-" + format_double(value);
    report.manifest["bench.name"] = report.name;
    report.manifest["bench.sweep.kind"] = std::string(to_string(kind));
    report.manifest["bench.sweep.value"] = format_double(value);
    reports.push_back(std::move(report));
  }
  return reports;
}

ScoreSet import_external_scores(const std::string& file, const Dataset& dataset) {
  ScoreSet scores = read_scores_csv(file);
  require(scores.provenance == dataset.digest(), ErrorKind::digest_mismatch,
          "scores file " + file + " references dataset " + scores.provenance +
              ", expected " + dataset.digest());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const std::size_t id = scores.path_ids[i];
    require(id < dataset.size(), ErrorKind::schema,
            "scores file " + file + " row " + std::to_string(i + 1) + ": unknown path_id " +
                std::to_string(id));
    require(scores.labels[i] == dataset.labels[id], ErrorKind::schema,
            "scores file " + file + " row " + std::to_string(i + 1) + ": label " +
                std::to_string(scores.labels[i]) + " disagrees with dataset label " +
                std::to_string(dataset.labels[id]) + " for path " + std::to_string(id));
  }
  return scores;
}

}  // namespace lrtbench
