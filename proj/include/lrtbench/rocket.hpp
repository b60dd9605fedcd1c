#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrtbench/scores.hpp"
#include "lrtbench/simulate.hpp"

namespace lrtbench {

/// One random convolutional kernel. Stride is always 1.
struct RocketKernel {
  std::vector<double> weights;
  double bias = 0.0;
  std::size_t dilation = 1;
  bool padding = false;
  std::size_t channel = 0;  // input channel the kernel reads

  std::size_t length() const { return weights.size(); }
  std::size_t span() const { return (length() - 1) * dilation + 1; }
  std::size_t pad() const { return padding ? (length() - 1) * dilation / 2 : 0; }
};

struct KernelSet {
  std::vector<RocketKernel> kernels;
  std::size_t input_length = 0;
  std::size_t channels = 1;
  std::uint64_t seed = 0;

  std::size_t feature_count() const { return 2 * kernels.size(); }
};

/// Draws `count` kernels: length uniform in {7, 9, 11}; weights N(0, 1) then
/// mean-centred; bias U(-1, 1); dilation floor(2^x), x ~ N(0, A),
/// A = log2((l_input - 1)/(l_kernel - 1)), clipped to [1, largest that fits];
/// padding with probability 1/2; channel uniform. Series shorter than the
/// kernel get dilation 1 and forced padding.
KernelSet sample_kernels(std::size_t count, std::size_t input_length, std::size_t channels,
                         std::uint64_t seed);

struct KernelFeatures {
  double ppv = 0.0;  // fraction of strictly positive feature-map entries
  double max = 0.0;
};

KernelFeatures apply_kernel(const RocketKernel& kernel, std::span<const double> series);

using FeatureMatrix = Eigen::MatrixXd;  // rows = paths, columns = (ppv, max) per kernel

/// Number of input channels for a dataset: its state coordinates plus the time grid.
std::size_t rocket_channels(const Dataset& dataset);

/// Per path: the (ppv, max) pair of every kernel, kernel order. Channel c < d
/// reads coordinate c; channel d reads the time grid.
FeatureMatrix featurize(std::span<const TimeSeriesPath> paths, const KernelSet& kernels);
FeatureMatrix featurize(const Dataset& dataset, const KernelSet& kernels);

struct RidgeOptions {
  std::vector<double> lambdas = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  std::size_t folds = 5;
  std::uint64_t seed = 0;
};

/// Ridge regression on +-1 labels over standardized features. The loss is the
/// mean squared error, so lambda does not scale with the number of rows.
struct LinearClassifier {
  Eigen::VectorXd mean;     // training column means
  Eigen::VectorXd scale;    // training column std; 0 marks a dropped column
  Eigen::VectorXd weights;  // per raw feature, 0 for dropped columns
  double intercept = 0.0;
  double lambda = 0.0;
  double cv_accuracy = 0.0;
  std::vector<double> cv_accuracy_by_lambda;

  std::size_t feature_count() const { return static_cast<std::size_t>(weights.size()); }
};

/// Standardizes (training mean/std, zero-variance columns dropped), selects
/// lambda by stratified k-fold validation accuracy, then refits on all rows.
/// Solved in the dual (Gram) form since features usually outnumber samples.
LinearClassifier fit_ridge(const FeatureMatrix& features, std::span<const int> labels,
                           const RidgeOptions& options = {});

/// Raw decision values: standardized features . weights + intercept.
Eigen::VectorXd decision_values(const LinearClassifier& classifier, const FeatureMatrix& features);

/// Kernels plus the classifier trained on their features.
struct RocketModel {
  KernelSet kernels;
  LinearClassifier classifier;
};

ScoreSet predict_scores(const LinearClassifier& classifier, const FeatureMatrix& features,
                        std::span<const int> labels, std::span<const std::size_t> path_ids = {});

}  // namespace lrtbench
