#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>

#include "lrtbench/bench.hpp"
#include "lrtbench/error.hpp"
#include "lrtbench/io.hpp"
#include "lrtbench/metrics.hpp"
#include "lrtbench/parallel.hpp"
#include "lrtbench/rng.hpp"
#include "lrtbench/rocket.hpp"

using namespace lrtbench;

namespace {

RocketKernel kernel(std::vector<double> weights, double bias, std::size_t dilation = 1,
                    bool padding = false) {
  RocketKernel k;
  k.weights = std::move(weights);
  k.bias = bias;
  k.dilation = dilation;
  k.padding = padding;
  return k;
}

// Direct convolution used as an oracle for apply_kernel.
KernelFeatures convolve(const RocketKernel& k, const std::vector<double>& x) {
  const long n = static_cast<long>(x.size());
  const long pad = static_cast<long>(k.pad());
  const long span = static_cast<long>(k.span());
  const long outputs = n + 2 * pad - span + 1;
  std::size_t positive = 0;
  double best = -INFINITY;
  for (long o = 0; o < outputs; ++o) {
    double v = k.bias;
    for (std::size_t j = 0; j < k.length(); ++j) {
      const long idx = o - pad + static_cast<long>(j * k.dilation);
      if (idx >= 0 && idx < n) v += k.weights[j] * x[static_cast<std::size_t>(idx)];
    }
    positive += v > 0 ? 1 : 0;
    best = std::max(best, v);
  }
  return {static_cast<double>(positive) / static_cast<double>(outputs), best};
}

FeatureMatrix gaussian_features(std::size_t n, std::size_t p, std::uint64_t seed) {
  RandomStream s(seed, StreamDomain::test, 0, 0);
  FeatureMatrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = s.normal();
  return f;
}

double training_accuracy(const LinearClassifier& c, const FeatureMatrix& f,
                         const std::vector<int>& labels) {
  const Eigen::VectorXd v = decision_values(c, f);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    hits += (v[static_cast<Eigen::Index>(i)] > 0 ? 1 : 0) == labels[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

}  // namespace

TEST(SampleKernels, TenThousandKernelsGiveTwentyThousandFeatures) {
  const KernelSet ks = sample_kernels(10000, 21, 2, 1);
  EXPECT_EQ(ks.kernels.size(), 10000u);
  EXPECT_EQ(ks.feature_count(), 20000u);
}

TEST(SampleKernels, DrawTableAtLength21) {
  const KernelSet ks = sample_kernels(10000, 21, 3, 7);
  std::size_t padded = 0;
  std::size_t per_channel[3] = {0, 0, 0};
  for (const auto& k : ks.kernels) {
    ASSERT_TRUE(k.length() == 7 || k.length() == 9 || k.length() == 11);
    ASSERT_GE(k.dilation, 1u);
    ASSERT_LE(k.span(), 21u);
    ASSERT_GE(k.bias, -1.0);
    ASSERT_LE(k.bias, 1.0);
    ASSERT_LT(k.channel, 3u);
    const double sum = std::accumulate(k.weights.begin(), k.weights.end(), 0.0);
    ASSERT_NEAR(sum, 0.0, 1e-12);
    padded += k.padding ? 1 : 0;
    per_channel[k.channel] += 1;
  }
  // Padding flag is a fair coin: 5000 +- 4 sd (sd = 50).
  EXPECT_NEAR(static_cast<double>(padded), 5000.0, 200.0);
  for (auto c : per_channel) EXPECT_NEAR(static_cast<double>(c), 10000.0 / 3.0, 4 * 47.2);
}

TEST(SampleKernels, DilationSpreadsOverAdmissibleRange) {
  const KernelSet ks = sample_kernels(10000, 101, 1, 3);
  std::size_t above_one = 0;
  for (const auto& k : ks.kernels) {
    ASSERT_LE(k.span(), 101u);
    above_one += k.dilation > 1 ? 1 : 0;
  }
  EXPECT_GT(above_one, 1000u);
}

TEST(SampleKernels, InputEqualToKernelLengthForcesUnitDilation) {
  for (std::size_t len : {7u, 9u, 11u}) {
    const KernelSet ks = sample_kernels(2000, len, 1, 5);
    for (const auto& k : ks.kernels) {
      if (k.length() == len) {
        ASSERT_EQ(k.dilation, 1u);
      }
      if (k.length() >= len) {
        ASSERT_EQ(k.dilation, 1u);
      }
      if (k.length() > len) {
        ASSERT_TRUE(k.padding);
      }
    }
  }
}

TEST(SampleKernels, ShortSeriesAreHandledAndTooShortRejected) {
  const KernelSet ks = sample_kernels(100, 6, 1, 9);
  for (const auto& k : ks.kernels) {
    EXPECT_EQ(k.dilation, 1u);
    EXPECT_TRUE(k.padding);
  }
  EXPECT_THROW(sample_kernels(10, 1, 1, 0), Error);
  EXPECT_THROW(sample_kernels(0, 21, 1, 0), Error);
  EXPECT_THROW(sample_kernels(10, 21, 0, 0), Error);
}

TEST(SampleKernels, DeterministicInSeed) {
  const KernelSet a = sample_kernels(500, 41, 2, 11);
  const KernelSet b = sample_kernels(500, 41, 2, 11);
  const KernelSet c = sample_kernels(500, 41, 2, 12);
  bool differs = false;
  for (std::size_t i = 0; i < 500; ++i) {
    EXPECT_EQ(a.kernels[i].weights, b.kernels[i].weights);
    EXPECT_EQ(a.kernels[i].bias, b.kernels[i].bias);
    EXPECT_EQ(a.kernels[i].dilation, b.kernels[i].dilation);
    EXPECT_EQ(a.kernels[i].padding, b.kernels[i].padding);
    EXPECT_EQ(a.kernels[i].channel, b.kernels[i].channel);
    differs = differs || a.kernels[i].bias != c.kernels[i].bias;
  }
  EXPECT_TRUE(differs);
}

TEST(ApplyKernel, ZeroSeries) {
  const std::vector<double> zero(9, 0.0);
  const auto f0 = apply_kernel(kernel({1, 0, -1, 0, 1, 0, -1}, 0.0), zero);
  EXPECT_EQ(f0.ppv, 0.0);
  EXPECT_EQ(f0.max, 0.0);
  const auto f1 = apply_kernel(kernel({1, 0, -1, 0, 1, 0, -1}, 1.0), zero);
  EXPECT_EQ(f1.ppv, 1.0);
  EXPECT_EQ(f1.max, 1.0);
}

TEST(ApplyKernel, HandConvolution) {
  const auto f = apply_kernel(kernel({1, -1}, 0.0), std::vector<double>{0, 1, 3});
  EXPECT_EQ(f.ppv, 0.0);
  EXPECT_EQ(f.max, -1.0);
}

TEST(ApplyKernel, MatchesDirectConvolution) {
  RandomStream s(1, StreamDomain::test, 1, 0);
  const KernelSet ks = sample_kernels(300, 30, 1, 21);
  std::vector<double> x(30);
  for (auto& v : x) v = s.normal();
  for (const auto& k : ks.kernels) {
    const auto got = apply_kernel(k, x);
    const auto want = convolve(k, x);
    ASSERT_EQ(got.ppv, want.ppv);
    ASSERT_NEAR(got.max, want.max, 1e-12);
    ASSERT_GE(got.ppv, 0.0);
    ASSERT_LE(got.ppv, 1.0);
  }
}

TEST(ApplyKernel, PaddingKeepsOutputLength) {
  // Padded length-3 kernel at dilation 2 on 5 points: 5 outputs, each is the bias.
  const auto f = apply_kernel(kernel({0, 0, 0}, 0.5, 2, true), std::vector<double>(5, 1.0));
  EXPECT_EQ(f.ppv, 1.0);
  EXPECT_EQ(f.max, 0.5);
  EXPECT_THROW(apply_kernel(kernel({1, 0, -1}, 0.0, 4), std::vector<double>(5, 0.0)), Error);
}

namespace {

Dataset small_dataset(std::size_t paths, std::uint64_t seed) {
  CaseSetting s = resolve_case('a', 1);
  return generate_dataset(s.pair(), s.config(paths, seed), false);
}

}  // namespace

TEST(Featurize, ShapeRangeAndDeterminism) {
  const Dataset ds = small_dataset(40, 3);
  const KernelSet ks = sample_kernels(250, ds.paths[0].size(), rocket_channels(ds), 4);
  const FeatureMatrix f = featurize(ds, ks);
  ASSERT_EQ(f.rows(), 40);
  ASSERT_EQ(f.cols(), 500);
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    for (Eigen::Index k = 0; k < 250; ++k) {
      ASSERT_GE(f(i, 2 * k), 0.0);
      ASSERT_LE(f(i, 2 * k), 1.0);
    }
  set_thread_count(1);
  const FeatureMatrix g = featurize(ds, ks);
  set_thread_count(0);
  EXPECT_TRUE((f.array() == g.array()).all());
}

TEST(Featurize, TimeChannelIsTheLastChannel) {
  const Dataset ds = small_dataset(4, 3);
  EXPECT_EQ(rocket_channels(ds), 2u);
  KernelSet ks;
  ks.input_length = ds.paths[0].size();
  ks.channels = 2;
  RocketKernel k = kernel({0, 0, 0, 0, 0, 0, 1}, 0.0);
  k.channel = 1;
  ks.kernels.push_back(k);
  const FeatureMatrix f = featurize(ds, ks);
  // Unit weight on the last tap: feature map is the time grid shifted by 6 steps.
  EXPECT_NEAR(f(0, 1), ds.paths[0].times.back(), 1e-15);
  EXPECT_NEAR(f(0, 0), 1.0, 1e-15);
}

TEST(Featurize, DuplicateRowsGiveIdenticalFeatures) {
  Dataset ds = small_dataset(6, 8);
  ds.paths[3] = ds.paths[1];
  const KernelSet ks = sample_kernels(300, ds.paths[0].size(), rocket_channels(ds), 2);
  const FeatureMatrix f = featurize(ds, ks);
  EXPECT_TRUE((f.row(1).array() == f.row(3).array()).all());
}

TEST(Featurize, ZeroDataWithZeroBiasesHasZeroPpv) {
  std::vector<TimeSeriesPath> paths(3);
  for (auto& p : paths) {
    p.dim = 1;
    p.times.assign(15, 0.0);
    p.states.assign(15, 0.0);
  }
  KernelSet ks = sample_kernels(200, 15, 2, 6);
  for (auto& k : ks.kernels) k.bias = 0.0;
  const FeatureMatrix f = featurize(paths, ks);
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    for (Eigen::Index k = 0; k < 200; ++k) ASSERT_EQ(f(i, 2 * k), 0.0);
}

TEST(Featurize, MismatchedInputsAreRejected) {
  const Dataset ds = small_dataset(4, 3);
  const KernelSet wrong_length = sample_kernels(5, 30, 2, 1);
  EXPECT_THROW(featurize(ds, wrong_length), Error);
  const KernelSet wrong_channels = sample_kernels(5, ds.paths[0].size(), 3, 1);
  EXPECT_THROW(featurize(ds, wrong_channels), Error);
}

TEST(Ridge, SeparableToySetIsFitExactly) {
  FeatureMatrix f(4, 2);
  f << -2, 1, -1, -1, 1, 1, 2, -1;
  const std::vector<int> labels = {0, 0, 1, 1};
  RidgeOptions o;
  o.lambdas = {1e-3};
  const LinearClassifier c = fit_ridge(f, labels, o);
  EXPECT_EQ(c.lambda, 1e-3);
  EXPECT_EQ(c.feature_count(), 2u);
  EXPECT_EQ(training_accuracy(c, f, labels), 1.0);
  const ScoreSet s = predict_scores(c, f, labels);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.scores[i] > 0, labels[i] == 1);
}

TEST(Ridge, MatchesPrimalClosedForm) {
  const FeatureMatrix f = gaussian_features(30, 4, 5);
  std::vector<int> labels(30);
  for (std::size_t i = 0; i < 30; ++i) labels[i] = f(static_cast<Eigen::Index>(i), 0) > 0 ? 1 : 0;
  RidgeOptions o;
  o.lambdas = {0.3};
  const LinearClassifier c = fit_ridge(f, labels, o);

  // Primal oracle: minimize |y - b - Zw|^2 / n + lambda |w|^2 on standardized Z.
  const Eigen::Index n = f.rows();
  const Eigen::RowVectorXd mean = f.colwise().mean();
  Eigen::MatrixXd z = f.rowwise() - mean;
  const Eigen::RowVectorXd sd = (z.array().square().colwise().sum() / static_cast<double>(n)).sqrt();
  for (Eigen::Index j = 0; j < z.cols(); ++j) z.col(j) /= sd[j];
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = labels[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
  const Eigen::MatrixXd a =
      z.transpose() * z + 0.3 * static_cast<double>(n) * Eigen::MatrixXd::Identity(4, 4);
  const Eigen::VectorXd w = a.ldlt().solve(z.transpose() * (y.array() - y.mean()).matrix());
  const Eigen::VectorXd want = (z * w).array() + y.mean();
  const Eigen::VectorXd got = decision_values(c, f);
  for (Eigen::Index i = 0; i < n; ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
}

TEST(Ridge, PermutedLabelsValidateNearChance) {
  const std::size_t n = 400;
  const FeatureMatrix f = gaussian_features(n, 50, 17);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i % 2;
  RandomStream s(3, StreamDomain::test, 2, 0);
  for (std::size_t i = n; i > 1; --i) std::swap(labels[i - 1], labels[s.below(i)]);
  const LinearClassifier c = fit_ridge(f, labels);
  const double sd = std::sqrt(0.25 / static_cast<double>(n));
  ASSERT_EQ(c.cv_accuracy_by_lambda.size(), 7u);
  for (double acc : c.cv_accuracy_by_lambda) EXPECT_NEAR(acc, 0.5, 3 * sd);
}

TEST(Ridge, DuplicatedColumnLeavesPredictionsUnchanged) {
  FeatureMatrix f(4, 2);
  f << 0.3, 1.2, -0.7, 0.4, 1.1, -0.9, 0.2, 0.5;
  FeatureMatrix g(4, 3);
  g << f, f.col(1);
  const std::vector<int> labels = {0, 1, 0, 1};
  RidgeOptions o;
  o.lambdas = {1e-9};
  const Eigen::VectorXd a = decision_values(fit_ridge(f, labels, o), f);
  const Eigen::VectorXd b = decision_values(fit_ridge(g, labels, o), g);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-6);
}

TEST(Ridge, ZeroFeaturesGiveConstantScore) {
  const FeatureMatrix f = gaussian_features(20, 5, 2);
  std::vector<int> labels(20);
  for (std::size_t i = 0; i < 20; ++i) labels[i] = i % 2;
  const LinearClassifier c = fit_ridge(f, labels);
  const Eigen::VectorXd v = decision_values(c, FeatureMatrix::Zero(7, 5));
  for (Eigen::Index i = 1; i < 7; ++i) EXPECT_EQ(v[i], v[0]);
}

TEST(Ridge, ColumnRescalingIsAbsorbed) {
  const FeatureMatrix f = gaussian_features(60, 6, 9);
  std::vector<int> labels(60);
  for (std::size_t i = 0; i < 60; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    labels[i] = f(r, 0) + 0.5 * f(r, 1) > 0 ? 1 : 0;
  }
  FeatureMatrix g = f;
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = g.col(j) * std::pow(10.0, j - 2) + Eigen::VectorXd::Constant(60, j);
  const ScoreSet a = predict_scores(fit_ridge(f, labels), f, labels);
  const ScoreSet b = predict_scores(fit_ridge(g, labels), g, labels);
  std::vector<std::size_t> oa(60), ob(60);
  std::iota(oa.begin(), oa.end(), 0u);
  std::iota(ob.begin(), ob.end(), 0u);
  std::sort(oa.begin(), oa.end(), [&](auto x, auto y) { return a.scores[x] < a.scores[y]; });
  std::sort(ob.begin(), ob.end(), [&](auto x, auto y) { return b.scores[x] < b.scores[y]; });
  EXPECT_EQ(oa, ob);
  for (std::size_t i = 0; i < 60; ++i) EXPECT_NEAR(a.scores[i], b.scores[i], 1e-9);
}

TEST(Ridge, ConstantColumnsAreDroppedAndDegenerateSetsRejected) {
  FeatureMatrix f = gaussian_features(10, 3, 4);
  f.col(1).setConstant(2.5);
  std::vector<int> labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  const LinearClassifier c = fit_ridge(f, labels);
  EXPECT_EQ(c.scale[1], 0.0);
  EXPECT_EQ(c.weights[1], 0.0);
  EXPECT_EQ(c.feature_count(), 3u);

  EXPECT_THROW(fit_ridge(f, std::vector<int>{0, 1, 1, 1, 1, 1, 1, 1, 1, 1}), Error);
  EXPECT_THROW(fit_ridge(FeatureMatrix::Ones(4, 2), std::vector<int>{0, 1, 0, 1}), Error);
  EXPECT_THROW(fit_ridge(f, std::vector<int>{0, 1}), Error);
  EXPECT_THROW(decision_values(c, FeatureMatrix::Zero(2, 4)), Error);
}

TEST(Ridge, DeterministicInSeed) {
  const FeatureMatrix f = gaussian_features(80, 20, 6);
  std::vector<int> labels(80);
  for (std::size_t i = 0; i < 80; ++i) labels[i] = f(static_cast<Eigen::Index>(i), 3) > 0.2 ? 1 : 0;
  RidgeOptions o;
  o.seed = 42;
  const LinearClassifier a = fit_ridge(f, labels, o);
  const LinearClassifier b = fit_ridge(f, labels, o);
  EXPECT_EQ(a.lambda, b.lambda);
  EXPECT_EQ(a.cv_accuracy_by_lambda, b.cv_accuracy_by_lambda);
  EXPECT_TRUE((a.weights.array() == b.weights.array()).all());
  EXPECT_EQ(a.intercept, b.intercept);
}

TEST(RocketEndToEnd, ConstantDriftTestAucWellAboveChance) {
  const CaseSetting s = resolve_case('a', 1);
  const Dataset ds = generate_dataset(s.pair(), s.config(2000, 101), false);
  const SplitIndices sp = split(ds.labels, 0.75, 5);
  const KernelSet ks = sample_kernels(10000, ds.paths[0].size(), rocket_channels(ds), 6);
  const FeatureMatrix f = featurize(ds, ks);
  FeatureMatrix train(static_cast<Eigen::Index>(sp.train.size()), f.cols());
  FeatureMatrix test(static_cast<Eigen::Index>(sp.test.size()), f.cols());
  std::vector<int> train_labels, test_labels;
  for (std::size_t i = 0; i < sp.train.size(); ++i) {
    train.row(static_cast<Eigen::Index>(i)) = f.row(static_cast<Eigen::Index>(sp.train[i]));
    train_labels.push_back(ds.labels[sp.train[i]]);
  }
  for (std::size_t i = 0; i < sp.test.size(); ++i) {
    test.row(static_cast<Eigen::Index>(i)) = f.row(static_cast<Eigen::Index>(sp.test[i]));
    test_labels.push_back(ds.labels[sp.test[i]]);
  }
  RidgeOptions o;
  o.seed = 7;
  const LinearClassifier c = fit_ridge(train, train_labels, o);
  const ScoreSet scores = predict_scores(c, test, test_labels, sp.test);
  EXPECT_EQ(scores.path_ids, sp.test);
  const double m = static_cast<double>(sp.test.size());
  const double auc_value = evaluate(scores).auc;
  EXPECT_GT(auc_value, 0.5 + 10.0 * std::sqrt(0.25 / m)) << "auc " << auc_value;

  const auto file = (std::filesystem::temp_directory_path() / "lrtbench_rocket_model.txt").string();
  write_rocket_model(file, RocketModel{ks, c});
  const RocketModel back = read_rocket_model(file);
  std::filesystem::remove(file);
  ASSERT_EQ(back.kernels.kernels.size(), ks.kernels.size());
  const Eigen::VectorXd v0 = decision_values(c, test);
  const Eigen::VectorXd v1 = decision_values(back.classifier, test);
  EXPECT_TRUE((v0.array() == v1.array()).all());
  const FeatureMatrix f2 = featurize(ds, back.kernels);
  EXPECT_TRUE((f2.array() == f.array()).all());
}
