#include "lrtbench/rocket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lrtbench/error.hpp"
#include "lrtbench/parallel.hpp"
#include "lrtbench/rng.hpp"

namespace lrtbench {

namespace {

constexpr std::size_t kLengths[] = {7, 9, 11};
constexpr std::size_t kGramBlock = 64;

// Fixed-size row blocks keep the floating-point evaluation order independent
// of how many workers share the blocks.
Eigen::MatrixXd gram(const Eigen::MatrixXd& z) {
  const auto n = z.rows();
  Eigen::MatrixXd k(n, n);
  const std::size_t blocks = (static_cast<std::size_t>(n) + kGramBlock - 1) / kGramBlock;
  parallel_for(blocks, [&](std::size_t b) {
    const auto start = static_cast<Eigen::Index>(b * kGramBlock);
    const auto rows = std::min<Eigen::Index>(kGramBlock, n - start);
    k.middleRows(start, rows).noalias() = z.middleRows(start, rows) * z.transpose();
  });
  return k;
}

// Centred Gram entries (z_i - zbar)(z_j - zbar) for zbar the mean over `train`.
struct CentredGram {
  Eigen::VectorXd row_mean;  // mean_j K(i, j) over j in train, for every row i
  double grand_mean = 0.0;

  CentredGram(const Eigen::MatrixXd& k, std::span<const std::size_t> train) {
    row_mean = Eigen::VectorXd::Zero(k.rows());
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      double sum = 0.0;
      for (std::size_t j : train) sum += k(i, static_cast<Eigen::Index>(j));
      row_mean[i] = sum / static_cast<double>(train.size());
    }
    double sum = 0.0;
    for (std::size_t j : train) sum += row_mean[static_cast<Eigen::Index>(j)];
    grand_mean = sum / static_cast<double>(train.size());
  }

  Eigen::MatrixXd block(const Eigen::MatrixXd& k, std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols) const {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto j = static_cast<Eigen::Index>(cols[c]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(rows[r]);
        out(r, c) = k(i, j) - row_mean[i] - row_mean[j] + grand_mean;
      }
    }
    return out;
  }
};

// Minimizes |y - Zw|^2 / n + lambda |w|^2, i.e. (K + n lambda I) alpha = y.
Eigen::VectorXd solve_dual(const Eigen::MatrixXd& centred, const Eigen::VectorXd& target,
                           double lambda) {
  Eigen::MatrixXd system = centred;
  system.diagonal().array() += lambda * static_cast<double>(centred.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    return Eigen::LDLT<Eigen::MatrixXd>(system).solve(target);
  }
  return llt.solve(target);
}

}  // namespace

KernelSet sample_kernels(std::size_t count, std::size_t input_length, std::size_t channels,
                         std::uint64_t seed) {
  require(count >= 1, ErrorKind::invalid_argument, "kernel count must be positive");
  require(input_length >= 2, ErrorKind::invalid_argument, "series must have at least 2 points");
  require(channels >= 1, ErrorKind::invalid_argument, "need at least one channel");
  KernelSet set;
  set.input_length = input_length;
  set.channels = channels;
  set.seed = seed;
  set.kernels.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    RandomStream stream(seed, StreamDomain::kernel_draw, 0, static_cast<std::uint32_t>(k));
    RocketKernel& kernel = set.kernels[k];
    const std::size_t length = kLengths[stream.below(3)];
    kernel.weights.resize(length);
    for (auto& w : kernel.weights) w = stream.normal();
    const double mean =
        std::accumulate(kernel.weights.begin(), kernel.weights.end(), 0.0) /
        static_cast<double>(length);
    for (auto& w : kernel.weights) w -= mean;
    kernel.bias = stream.uniform(-1.0, 1.0);

    const double exponent_draw = stream.normal();
    if (input_length > length) {
      const double ratio =
          static_cast<double>(input_length - 1) / static_cast<double>(length - 1);
      const double a = std::log2(ratio);
      const double dilation = std::floor(std::exp2(exponent_draw * std::sqrt(a)));
      const auto largest = static_cast<std::size_t>(std::floor(ratio));
      kernel.dilation = std::clamp<std::size_t>(
          dilation < 1.0 ? 1 : static_cast<std::size_t>(std::min(dilation, 1e9)), 1, largest);
    } else {
      kernel.dilation = 1;
    }
    kernel.padding = stream.below(2) == 1 || kernel.span() > input_length;
    kernel.channel = static_cast<std::size_t>(stream.below(channels));
  }
  return set;
}

KernelFeatures apply_kernel(const RocketKernel& kernel, std::span<const double> series) {
  const auto n = static_cast<std::ptrdiff_t>(series.size());
  const auto pad = static_cast<std::ptrdiff_t>(kernel.pad());
  const auto span = static_cast<std::ptrdiff_t>(kernel.span());
  const std::ptrdiff_t outputs = n + 2 * pad - span + 1;
  require(outputs >= 1, ErrorKind::dimension_mismatch,
          "series of length " + std::to_string(n) + " is shorter than the kernel span");
  const auto dilation = static_cast<std::ptrdiff_t>(kernel.dilation);
  const auto length = static_cast<std::ptrdiff_t>(kernel.length());

  std::size_t positive = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = 0; i < outputs; ++i) {
    double value = kernel.bias;
    for (std::ptrdiff_t j = 0; j < length; ++j) {
      const std::ptrdiff_t index = i - pad + j * dilation;
      if (index >= 0 && index < n) value += kernel.weights[static_cast<std::size_t>(j)] * series[index];
    }
    if (value > 0.0) ++positive;
    best = std::max(best, value);
  }
  return {static_cast<double>(positive) / static_cast<double>(outputs), best};
}

std::size_t rocket_channels(const Dataset& dataset) {
  require(!dataset.paths.empty(), ErrorKind::invalid_argument, "empty dataset");
  return dataset.paths.front().dim + 1;
}

FeatureMatrix featurize(std::span<const TimeSeriesPath> paths, const KernelSet& kernels) {
  FeatureMatrix features(static_cast<Eigen::Index>(paths.size()),
                         static_cast<Eigen::Index>(kernels.feature_count()));
  parallel_for(paths.size(), [&](std::size_t p) {
    const TimeSeriesPath& path = paths[p];
    require(path.size() == kernels.input_length, ErrorKind::dimension_mismatch,
            "path length " + std::to_string(path.size()) + " does not match kernel input length " +
                std::to_string(kernels.input_length));
    require(path.dim + 1 == kernels.channels, ErrorKind::dimension_mismatch,
            "path channels do not match the kernel set");
    // Channel-major copy: coordinates first, time grid last.
    std::vector<double> channels(kernels.channels * path.size());
    for (std::size_t t = 0; t < path.size(); ++t) {
      for (std::size_t c = 0; c < path.dim; ++c)
        channels[c * path.size() + t] = path.states[t * path.dim + c];
      channels[path.dim * path.size() + t] = path.times[t];
    }
    const auto row = static_cast<Eigen::Index>(p);
    for (std::size_t k = 0; k < kernels.kernels.size(); ++k) {
      const RocketKernel& kernel = kernels.kernels[k];
      const auto series =
          std::span<const double>(channels).subspan(kernel.channel * path.size(), path.size());
      const KernelFeatures f = apply_kernel(kernel, series);
      features(row, static_cast<Eigen::Index>(2 * k)) = f.ppv;
      features(row, static_cast<Eigen::Index>(2 * k + 1)) = f.max;
    }
  });
  return features;
}

FeatureMatrix featurize(const Dataset& dataset, const KernelSet& kernels) {
  return featurize(std::span<const TimeSeriesPath>(dataset.paths), kernels);
}

LinearClassifier fit_ridge(const FeatureMatrix& features, std::span<const int> labels,
                           const RidgeOptions& options) {
  const auto n = static_cast<std::size_t>(features.rows());
  const auto p = features.cols();
  require(labels.size() == n, ErrorKind::dimension_mismatch, "feature rows and labels differ");
  require(!options.lambdas.empty() && options.folds >= 2, ErrorKind::invalid_argument,
          "ridge needs a lambda grid and at least 2 folds");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < n; ++i) {
    require(labels[i] == 0 || labels[i] == 1, ErrorKind::invalid_argument,
            "labels must be 0 or 1");
    by_class[labels[i]].push_back(i);
  }
  require(by_class[0].size() >= 2 && by_class[1].size() >= 2, ErrorKind::degenerate,
          "ridge training needs at least 2 samples per class");

  LinearClassifier model;
  model.mean = features.colwise().mean().transpose();
  model.scale = Eigen::VectorXd::Zero(p);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double variance =
        (features.col(j).array() - model.mean[j]).square().sum() / static_cast<double>(n);
    const double std_dev = std::sqrt(variance);
    if (std_dev > 1e-10 * (1.0 + std::abs(model.mean[j]))) {
      model.scale[j] = std_dev;
      kept.push_back(j);
    }
  }
  require(!kept.empty(), ErrorKind::degenerate, "every feature column is constant");

  Eigen::MatrixXd z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Eigen::Index j = kept[c];
    z.col(static_cast<Eigen::Index>(c)) =
        (features.col(j).array() - model.mean[j]) / model.scale[j];
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) y[static_cast<Eigen::Index>(i)] = labels[i] == 1 ? 1.0 : -1.0;

  const Eigen::MatrixXd k = gram(z);

  // Stratified folds: shuffle each class, deal round-robin.
  const std::size_t folds =
      std::min({options.folds, by_class[0].size(), by_class[1].size()});
  std::vector<std::size_t> fold_of(n);
  for (int label = 0; label < 2; ++label) {
    auto members = by_class[label];
    RandomStream stream(options.seed, StreamDomain::cross_validation,
                        static_cast<std::uint32_t>(label), 0);
    for (std::size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[stream.below(i)]);
    for (std::size_t i = 0; i < members.size(); ++i) fold_of[members[i]] = i % folds;
  }

  struct Fold {
    std::vector<std::size_t> train, validation;
    Eigen::MatrixXd train_gram, cross_gram;
    Eigen::VectorXd target;
    double offset = 0.0;
  };
  std::vector<Fold> fold_data(folds);
  parallel_for(folds, [&](std::size_t f) {
    Fold& fold = fold_data[f];
    for (std::size_t i = 0; i < n; ++i) (fold_of[i] == f ? fold.validation : fold.train).push_back(i);
    const CentredGram centring(k, fold.train);
    fold.train_gram = centring.block(k, fold.train, fold.train);
    fold.cross_gram = centring.block(k, fold.validation, fold.train);
    fold.target.resize(static_cast<Eigen::Index>(fold.train.size()));
    for (std::size_t r = 0; r < fold.train.size(); ++r)
      fold.target[static_cast<Eigen::Index>(r)] = y[static_cast<Eigen::Index>(fold.train[r])];
    fold.offset = fold.target.mean();
    fold.target.array() -= fold.offset;
  });

  const std::size_t grid = options.lambdas.size();
  std::vector<std::size_t> correct(folds * grid, 0);
  parallel_for(folds * grid, [&](std::size_t job) {
    const Fold& fold = fold_data[job / grid];
    const double lambda = options.lambdas[job % grid];
    const Eigen::VectorXd alpha = solve_dual(fold.train_gram, fold.target, lambda);
    const Eigen::VectorXd predicted = fold.cross_gram * alpha;
    std::size_t hits = 0;
    for (std::size_t r = 0; r < fold.validation.size(); ++r) {
      const int guess = predicted[static_cast<Eigen::Index>(r)] + fold.offset > 0.0 ? 1 : 0;
      hits += guess == labels[fold.validation[r]] ? 1 : 0;
    }
    correct[job] = hits;
  });

  std::size_t best = 0;
  std::size_t best_hits = 0;
  model.cv_accuracy_by_lambda.resize(grid);
  for (std::size_t g = 0; g < grid; ++g) {
    std::size_t hits = 0;
    for (std::size_t f = 0; f < folds; ++f) hits += correct[f * grid + g];
    model.cv_accuracy_by_lambda[g] = static_cast<double>(hits) / static_cast<double>(n);
    if (g == 0 || hits > best_hits) {
      best_hits = hits;
      best = g;
    }
  }
  model.lambda = options.lambdas[best];
  model.cv_accuracy = model.cv_accuracy_by_lambda[best];

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const CentredGram centring(k, all);
  const Eigen::MatrixXd centred = centring.block(k, all, all);
  const double offset = y.mean();
  const Eigen::VectorXd alpha = solve_dual(centred, (y.array() - offset).matrix(), model.lambda);
  const Eigen::RowVectorXd z_mean = z.colwise().mean();
  const Eigen::VectorXd w_kept = (z.rowwise() - z_mean).transpose() * alpha;

  model.weights = Eigen::VectorXd::Zero(p);
  for (std::size_t c = 0; c < kept.size(); ++c) model.weights[kept[c]] = w_kept[static_cast<Eigen::Index>(c)];
  model.intercept = offset - z_mean.dot(w_kept);
  return model;
}

Eigen::VectorXd decision_values(const LinearClassifier& classifier, const FeatureMatrix& features) {
  require(static_cast<std::size_t>(features.cols()) == classifier.feature_count(),
          ErrorKind::dimension_mismatch,
          "feature count " + std::to_string(features.cols()) + " does not match classifier " +
              std::to_string(classifier.feature_count()));
  Eigen::VectorXd effective = Eigen::VectorXd::Zero(features.cols());
  double shift = classifier.intercept;
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    if (classifier.scale[j] == 0.0) continue;
    effective[j] = classifier.weights[j] / classifier.scale[j];
    shift -= effective[j] * classifier.mean[j];
  }
  Eigen::VectorXd out(features.rows());
  for (Eigen::Index i = 0; i < features.rows(); ++i) out[i] = features.row(i).dot(effective) + shift;
  return out;
}

ScoreSet predict_scores(const LinearClassifier& classifier, const FeatureMatrix& features,
                        std::span<const int> labels, std::span<const std::size_t> path_ids) {
  require(labels.size() == static_cast<std::size_t>(features.rows()), ErrorKind::dimension_mismatch,
          "feature rows and labels differ");
  const Eigen::VectorXd values = decision_values(classifier, features);
  ScoreSet out;
  out.mode = "rocket";
  out.scores.assign(values.data(), values.data() + values.size());
  out.labels.assign(labels.begin(), labels.end());
  if (path_ids.empty()) {
    out.path_ids.resize(labels.size());
    std::iota(out.path_ids.begin(), out.path_ids.end(), std::size_t{0});
  } else {
    out.path_ids.assign(path_ids.begin(), path_ids.end());
  }
  return out;
}

}  // namespace lrtbench
