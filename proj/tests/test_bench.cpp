#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lrtbench/bench.hpp"
#include "lrtbench/error.hpp"
#include "lrtbench/gaussian_analytic.hpp"
#include "lrtbench/io.hpp"
#include "lrtbench/parallel.hpp"

using namespace lrtbench;

namespace {

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lrtbench_bench_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

BenchOptions lrt_only(std::size_t runs, std::uint64_t seed) {
  BenchOptions o;
  o.runs = runs;
  o.seed = seed;
  o.classifiers = {"lrt-hidden-truth", "lrt-numerical"};
  return o;
}

struct Tuple {
  char id;
  int index;
  std::size_t d, steps;
  double t_end, dt;
};

}  // namespace

TEST(ResolveCase, MatchesSettingsTable) {
  const Tuple table[] = {
      {'a', 1, 1, 10, 1, 0.1},   {'a', 4, 1, 80, 8, 0.1},    {'b', 1, 1, 20, 2, 0.1},
      {'b', 4, 1, 160, 16, 0.1}, {'c', 1, 1, 20, 2, 0.1},    {'c', 4, 8, 20, 2, 0.1},
      {'d', 1, 6, 20, 2, 0.1},   {'d', 3, 24, 20, 2, 0.1},   {'d', 4, 48, 20, 2, 0.1},
      {'e', 1, 1, 5, 1, 0.2},    {'e', 4, 1, 40, 1, 0.025},  {'f', 1, 24, 10, 4, 0.4},
      {'f', 2, 24, 20, 4, 0.2},  {'f', 4, 24, 80, 4, 0.05},
  };
  for (const Tuple& t : table) {
    const CaseSetting s = resolve_case(t.id, t.index);
    SCOPED_TRACE(s.name());
    EXPECT_EQ(s.dim, t.d);
    EXPECT_EQ(s.steps, t.steps);
    EXPECT_DOUBLE_EQ(s.t_end, t.t_end);
    EXPECT_DOUBLE_EQ(s.dt, t.dt);
    EXPECT_EQ(s.pair().dim(), t.d);
    EXPECT_NO_THROW(s.config(2000, 1).validate());
  }
}

TEST(ResolveCase, FamiliesAndFineSteps) {
  EXPECT_EQ(resolve_case('a', 1).family, ModelFamily::constant_drift);
  EXPECT_EQ(resolve_case('b', 2).family, ModelFamily::potential_gradient);
  EXPECT_EQ(resolve_case('c', 3).family, ModelFamily::ou);
  EXPECT_EQ(resolve_case('d', 1).family, ModelFamily::interacting_particles);
  EXPECT_EQ(resolve_case('e', 1).family, ModelFamily::linear_nonlinear);
  EXPECT_EQ(resolve_case('f', 1).family, ModelFamily::interacting_particles);
  EXPECT_EQ(resolve_case('d', 3).pair().spec0.agents, 12u);
  EXPECT_EQ(resolve_case('d', 3).pair().spec0.agent_dim, 2u);
  EXPECT_DOUBLE_EQ(resolve_case('e', 4).delta, 0.005);
  EXPECT_EQ(resolve_case('e', 4).config(2, 0).stride(), 5u);
  EXPECT_DOUBLE_EQ(resolve_case('e', 3).delta, 0.01);
  EXPECT_DOUBLE_EQ(resolve_case('f', 4).delta, 0.01);
  EXPECT_EQ(resolve_case("a", 1).name(), "a1");
}

TEST(ResolveCase, RejectsUnknownIds) {
  EXPECT_THROW(resolve_case('g', 1), Error);
  EXPECT_THROW(resolve_case('a', 0), Error);
  EXPECT_THROW(resolve_case('a', 5), Error);
  EXPECT_THROW(resolve_case("ab", 1), Error);
}

TEST(Split, SizesAndStratification) {
  std::vector<int> labels(2000);
  for (std::size_t i = 1000; i < 2000; ++i) labels[i] = 1;
  const SplitIndices s = split(labels, 0.75, 3);
  EXPECT_EQ(s.train.size(), 1500u);
  EXPECT_EQ(s.test.size(), 500u);
  std::size_t ones = 0;
  for (auto i : s.test) ones += static_cast<std::size_t>(labels[i]);
  EXPECT_EQ(ones, 250u);
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 2000; ++i) ASSERT_EQ(all[i], i);
}

TEST(Split, HalfOfFourPaths) {
  const std::vector<int> labels = {0, 0, 1, 1};
  const SplitIndices s = split(labels, 0.5, 9);
  ASSERT_EQ(s.train.size(), 2u);
  ASSERT_EQ(s.test.size(), 2u);
  EXPECT_NE(labels[s.train[0]], labels[s.train[1]]);
  EXPECT_NE(labels[s.test[0]], labels[s.test[1]]);
}

TEST(Split, DeterministicAndSeedDependent) {
  std::vector<int> labels(200);
  for (std::size_t i = 100; i < 200; ++i) labels[i] = 1;
  EXPECT_EQ(split(labels, 0.75, 5).test, split(labels, 0.75, 5).test);
  EXPECT_NE(split(labels, 0.75, 5).test, split(labels, 0.75, 6).test);
}

TEST(Split, RejectsEmptySides) {
  const std::vector<int> labels = {0, 0, 1, 1};
  EXPECT_THROW(split(labels, 0.0, 1), Error);
  EXPECT_THROW(split(labels, 1.0, 1), Error);
  EXPECT_THROW(split(labels, 0.1, 1), Error);
  EXPECT_THROW(split(labels, 0.9, 1), Error);
}

TEST(Classifiers, ParsingAndAliases) {
  EXPECT_EQ(parse_classifiers("hidden,numerical,rocket", ModelFamily::ou),
            (std::vector<std::string>{"lrt-hidden-truth", "lrt-numerical", "rocket"}));
  EXPECT_EQ(parse_classifiers("exact", ModelFamily::constant_drift),
            std::vector<std::string>{"lrt-exact-bm"});
  EXPECT_EQ(parse_classifiers("lrt-exact", ModelFamily::ou),
            std::vector<std::string>{"lrt-exact-ou"});
  EXPECT_EQ(parse_classifiers("hidden, hidden", ModelFamily::ou),
            std::vector<std::string>{"lrt-hidden-truth"});
  EXPECT_THROW(parse_classifiers("exact", ModelFamily::potential_gradient), Error);
  EXPECT_THROW(parse_classifiers("forest", ModelFamily::ou), Error);
  EXPECT_THROW(parse_classifiers("", ModelFamily::ou), Error);
}

TEST(RunCase, LrtOnlyReplicatesOneValuePerRun) {
  const BenchmarkReport r = run_case(resolve_case('a', 1), lrt_only(3, 7));
  EXPECT_EQ(r.runs, 3u);
  EXPECT_EQ(r.rows.size(), 6u);
  EXPECT_TRUE(r.rocket_models.empty());
  for (const auto& row : r.rows) EXPECT_EQ(row.scope, "full");
  const auto v = r.values("lrt-hidden-truth", "full", "auc");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], v[1]);
  EXPECT_EQ(v[1], v[2]);
  // Gaussian process: both LRT benchmarks agree.
  EXPECT_NEAR(r.values("lrt-numerical", "full", "auc")[0], v[0], 1e-12);
  EXPECT_NE(r.rows[0].seed, r.rows[2].seed);
  EXPECT_EQ(r.manifest.at("bench.runs"), "3");
  EXPECT_EQ(r.curves.size(), 2u);
}

TEST(RunCase, ConstantDriftMatchesClosedForm) {
  const CaseSetting s = resolve_case('a', 1);
  const BenchmarkReport r = run_case(s, lrt_only(1, 11));
  const double expected = bm_auc(s.pair(), s.t_end);
  EXPECT_NEAR(expected, 0.7602, 1e-4);
  EXPECT_NEAR(r.values("lrt-hidden-truth", "full", "auc")[0], expected, 0.03);
  EXPECT_NEAR(r.values("lrt-hidden-truth", "full", "acc_star")[0], 0.6915, 0.035);
}

TEST(RunCase, WithRocketAddsTestRowsOnTheSamePaths) {
  BenchOptions o = lrt_only(2, 5);
  o.classifiers.push_back("rocket");
  o.kernels = 300;
  o.paths = 400;
  const BenchmarkReport r = run_case(resolve_case('a', 1), o);
  EXPECT_EQ(r.values("rocket", "test", "auc").size(), 2u);
  EXPECT_EQ(r.values("lrt-hidden-truth", "test", "auc").size(), 2u);
  EXPECT_EQ(r.values("lrt-hidden-truth", "full", "auc").size(), 2u);
  EXPECT_EQ(r.primary_scope("rocket"), "test");
  EXPECT_EQ(r.primary_scope("lrt-numerical"), "full");
  ASSERT_EQ(r.rocket_models.size(), 1u);
  EXPECT_EQ(r.scores.at("rocket").size(), 100u);
  // Different runs re-split, so the test-side LRT values move.
  const auto lrt_test = r.values("lrt-hidden-truth", "test", "auc");
  EXPECT_NE(lrt_test[0], lrt_test[1]);
}

TEST(RunCase, ReportIsAPureFunctionOfItsInputs) {
  BenchOptions o = lrt_only(2, 21);
  o.classifiers.push_back("rocket");
  o.kernels = 200;
  o.paths = 200;
  const CaseSetting s = resolve_case('e', 1);
  set_thread_count(1);
  const BenchmarkReport a = run_case(s, o);
  set_thread_count(0);
  const BenchmarkReport b = run_case(s, o);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].classifier, b.rows[i].classifier);
    EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
    EXPECT_EQ(a.rows[i].auc, b.rows[i].auc);
    EXPECT_EQ(a.rows[i].acc_star, b.rows[i].acc_star);
  }
  EXPECT_EQ(a.manifest, b.manifest);
  o.seed = 22;
  const BenchmarkReport c = run_case(s, o);
  EXPECT_NE(a.manifest.at("content_digest"), c.manifest.at("content_digest"));
}

TEST(RunCase, RegenerationDrawsAFreshDatasetPerRun) {
  BenchOptions o = lrt_only(2, 3);
  o.regenerate = true;
  o.paths = 400;
  const BenchmarkReport r = run_case(resolve_case('a', 1), o);
  const auto v = r.values("lrt-numerical", "full", "auc");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NE(v[0], v[1]);
  EXPECT_NE(r.manifest.at("bench.dataset_digest.0"), r.manifest.at("bench.dataset_digest.1"));
}

TEST(RunCase, ErrorsCarryTheCaseAndRun) {
  CaseSetting s = resolve_case('b', 1);
  s.overrides["theta0"] = "0,0,0,0,-1";
  s.overrides["theta1"] = "0,0,0,0,-1";
  try {
    run_case(s, lrt_only(1, 1));
    FAIL() << "expected a non-finite error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_finite);
    EXPECT_NE(std::string(e.what()).find("[case b, setting 1, run 0]"), std::string::npos);
  }
  BenchOptions zero = lrt_only(0, 1);
  EXPECT_THROW(run_case(resolve_case('a', 1), zero), Error);
}

TEST(Sweep, SettingsFollowTheKind) {
  const CaseSetting base = resolve_case('d', 2);
  const CaseSetting t = sweep_setting(SweepKind::time_length, 8, base);
  EXPECT_EQ(t.steps, 80u);
  EXPECT_DOUBLE_EQ(t.t_end, 8);
  EXPECT_EQ(t.dim, 12u);
  const CaseSetting n = sweep_setting(SweepKind::noise, 0.2, base);
  EXPECT_DOUBLE_EQ(n.pair().spec0.sigma, 0.2);
  const CaseSetting m = sweep_setting(SweepKind::training_size, 1000, base);
  EXPECT_DOUBLE_EQ(m.t_end, 2);
  EXPECT_DOUBLE_EQ(m.pair().spec1.sigma, 0.4);
  EXPECT_THROW(sweep_setting(SweepKind::time_length, 0.25, base), Error);
  EXPECT_THROW(sweep_setting(SweepKind::noise, -1, base), Error);
  EXPECT_THROW(sweep_setting(SweepKind::training_size, 999, base), Error);
  EXPECT_EQ(parse_sweep_kind("training-size"), SweepKind::training_size);
  EXPECT_THROW(parse_sweep_kind("depth"), Error);
  EXPECT_EQ(default_sweep_values(SweepKind::noise), (std::vector<double>{0.8, 0.4, 0.2, 0.1}));
}

TEST(Sweep, TimeLengthOnConstantDriftFollowsClosedForm) {
  const double values[] = {1, 2, 4, 8};
  const double expected[] = {0.760, 0.841, 0.921, 0.977};
  const auto reports = sweep(SweepKind::time_length, values, resolve_case('a', 1), lrt_only(1, 4));
  ASSERT_EQ(reports.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    const double exact = normal_cdf(std::sqrt(2.0) * 0.5 * std::sqrt(values[i]));
    EXPECT_NEAR(exact, expected[i], 5e-4);
    EXPECT_NEAR(reports[i].values("lrt-hidden-truth", "full", "auc")[0], exact, 0.03);
    EXPECT_EQ(reports[i].manifest.at("bench.sweep.kind"), "time-length");
  }
}

TEST(Sweep, NoiseReductionDoesNotHurtTheLrt) {
  const double values[] = {0.8, 0.4, 0.2, 0.1};
  BenchOptions o = lrt_only(1, 6);
  o.paths = 1000;
  const auto reports = sweep(SweepKind::noise, values, resolve_case('d', 2), o);
  double previous = 0.0;
  for (const auto& r : reports) {
    const double v = r.values("lrt-hidden-truth", "full", "auc")[0];
    EXPECT_GE(v, previous) << r.name;
    previous = v;
  }
}

TEST(Sweep, TrainingSizeWithoutTrainingGivesIdenticalRows) {
  const double values[] = {500, 1000};
  const auto reports = sweep(SweepKind::training_size, values, resolve_case('d', 2), lrt_only(2, 8));
  ASSERT_EQ(reports.size(), 2u);
  ASSERT_EQ(reports[0].rows.size(), reports[1].rows.size());
  for (std::size_t i = 0; i < reports[0].rows.size(); ++i) {
    EXPECT_EQ(reports[0].rows[i].auc, reports[1].rows[i].auc);
    EXPECT_EQ(reports[0].rows[i].acc_star, reports[1].rows[i].acc_star);
  }
  EXPECT_EQ(reports[0].manifest.at("sim.M"), "500");
  EXPECT_EQ(reports[0].manifest.at("bench.train_paths"), "500");
  EXPECT_EQ(reports[1].manifest.at("bench.train_paths"), "1000");
}

TEST(ExternalScores, RoundTripOfRocketScoresReproducesMetrics) {
  const CaseSetting s = resolve_case('a', 1);
  const Dataset ds = generate_dataset(s.pair(), s.config(400, 31), false);
  BenchOptions o;
  o.runs = 1;
  o.seed = 2;
  o.classifiers = {"rocket"};
  o.kernels = 300;
  const BenchmarkReport first = run_dataset(ds, s, o);
  const std::string dir = temp_dir("external");
  const std::string file = dir + "/rocket.csv";
  write_scores_csv(file, first.scores.at("rocket"));

  BenchOptions again = o;
  again.classifiers = {"lrt-numerical"};
  again.external["resnet"] = import_external_scores(file, ds);
  const BenchmarkReport second = run_dataset(ds, s, again);
  const auto rocket_auc = first.values("rocket", "test", "auc");
  const auto imported = second.values("resnet", "external", "auc");
  ASSERT_EQ(imported.size(), 1u);
  EXPECT_EQ(imported[0], rocket_auc[0]);
  EXPECT_EQ(second.values("resnet", "external", "acc_star")[0],
            first.values("rocket", "test", "acc_star")[0]);
  EXPECT_EQ(second.manifest.at("bench.external.resnet"), ds.digest());
  std::filesystem::remove_all(dir);
}

TEST(ExternalScores, WrongDigestAndPermutedLabelsAreRejected) {
  const CaseSetting s = resolve_case('a', 1);
  const Dataset ds = generate_dataset(s.pair(), s.config(20, 1), false);
  const Dataset other = generate_dataset(s.pair(), s.config(20, 2), false);
  const std::string dir = temp_dir("external_bad");

  ScoreSet scores;
  scores.mode = "forest";
  scores.provenance = other.digest();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    scores.scores.push_back(static_cast<double>(i));
    scores.labels.push_back(ds.labels[i]);
    scores.path_ids.push_back(i);
  }
  write_scores_csv(dir + "/wrong.csv", scores);
  try {
    import_external_scores(dir + "/wrong.csv", ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::digest_mismatch);
  }

  scores.provenance = ds.digest();
  write_scores_csv(dir + "/good.csv", scores);
  EXPECT_EQ(import_external_scores(dir + "/good.csv", ds).size(), 20u);

  std::reverse(scores.labels.begin(), scores.labels.end());
  write_scores_csv(dir + "/permuted.csv", scores);
  try {
    import_external_scores(dir + "/permuted.csv", ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::schema);
  }

  scores.labels = ds.labels;
  scores.path_ids[3] = 99;
  write_scores_csv(dir + "/unknown.csv", scores);
  EXPECT_THROW(import_external_scores(dir + "/unknown.csv", ds), Error);

  // External scores computed against another dataset cannot enter a benchmark.
  BenchOptions o = lrt_only(1, 1);
  o.classifiers = {"lrt-numerical"};
  ScoreSet foreign = scores;
  foreign.path_ids[3] = 3;
  foreign.provenance = other.digest();
  o.external["forest"] = foreign;
  EXPECT_THROW(run_dataset(ds, s, o), Error);
  std::filesystem::remove_all(dir);
}
