#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lrtbench/models.hpp"
#include "lrtbench/rng.hpp"

namespace lrtbench {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Fine Euler-Maruyama step `delta`, observation gap `dt = stride * delta`,
/// `steps` observations after t_0 and `paths` labeled paths in total.
struct SimConfig {
  double delta = 0.01;
  double dt = 0.1;
  double t_end = 1.0;
  std::size_t steps = 10;
  std::size_t paths = 2000;
  std::uint64_t seed = 0;

  /// Builds a config with t_end = steps * dt.
  static SimConfig from_grid(double delta, double dt, std::size_t steps, std::size_t paths,
                             std::uint64_t seed);

  std::size_t stride() const;
  std::size_t fine_steps() const { return steps * stride(); }
  void validate() const;
};

enum class GridKind { fine, observed };

struct TimeSeriesPath {
  std::vector<double> times;
  std::vector<double> states;  // row-major, times.size() x dim
  std::size_t dim = 1;
  GridKind grid = GridKind::fine;

  std::size_t size() const { return times.size(); }
  std::span<const double> row(std::size_t k) const {
    return std::span<const double>(states).subspan(k * dim, dim);
  }
  std::span<double> row(std::size_t k) { return std::span<double>(states).subspan(k * dim, dim); }

  bool operator==(const TimeSeriesPath&) const = default;
};

using Manifest = std::map<std::string, std::string>;

/// Balanced labeled paths. Label-0 paths come first, then label-1 paths.
struct Dataset {
  std::vector<TimeSeriesPath> paths;
  std::vector<int> labels;
  std::vector<TimeSeriesPath> fine_paths;  // empty unless retained
  ModelPair pair;
  SimConfig config;
  Manifest manifest;
  bool imported = false;

  std::size_t size() const { return paths.size(); }
  bool has_fine() const { return !fine_paths.empty(); }
  const std::string& digest() const;
};

/// SHA-256 over labels and observed paths (times and states as raw doubles).
std::string content_digest(const Dataset& dataset);

/// Euler-Maruyama on the fine grid {0, delta, ..., t_end}:
/// X_{k+1} = X_k + b(t_k, X_k) delta + sigma(X_k) sqrt(delta) Z_k.
TimeSeriesPath simulate_fine_path(const ModelSpec& spec, std::span<const double> x0,
                                  const SimConfig& config, RandomStream& stream);

/// Every stride-th row of `fine`, endpoints included; rows are exact copies.
TimeSeriesPath downsample(const TimeSeriesPath& fine, std::size_t stride);

/// M/2 paths per class, x0 ~ N(0, I_d), per-path streams keyed by
/// (seed, class, index-within-class). Independent of the worker count.
Dataset generate_dataset(const ModelPair& pair, const SimConfig& config, bool keep_fine);

/// Manifest entries describing (pair, config); used by generate and import.
Manifest describe_generation(const ModelPair& pair, const SimConfig& config, bool keep_fine);
SimConfig sim_config_from_manifest(const Manifest& manifest);

}  // namespace lrtbench
