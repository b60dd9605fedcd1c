#include "lrtbench/simulate.hpp"

#include <cmath>
#include <cstring>

#include "lrtbench/digest.hpp"
#include "lrtbench/error.hpp"
#include "lrtbench/parallel.hpp"
#include "lrtbench/text.hpp"

namespace lrtbench {

SimConfig SimConfig::from_grid(double delta, double dt, std::size_t steps, std::size_t paths,
                               std::uint64_t seed) {
  SimConfig config;
  config.delta = delta;
  config.dt = dt;
  config.steps = steps;
  config.t_end = static_cast<double>(steps) * dt;
  config.paths = paths;
  config.seed = seed;
  return config;
}

std::size_t SimConfig::stride() const {
  const double ratio = dt / delta;
  const double rounded = std::round(ratio);
  require(rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * rounded,
          ErrorKind::invalid_argument,
          "observation gap " + format_double(dt) + " is not an integer multiple of delta " +
              format_double(delta));
  return static_cast<std::size_t>(rounded);
}

void SimConfig::validate() const {
  require(std::isfinite(delta) && delta > 0.0, ErrorKind::invalid_argument,
          "delta must be positive");
  require(std::isfinite(dt) && dt > 0.0, ErrorKind::invalid_argument, "dt must be positive");
  require(std::isfinite(t_end) && t_end > 0.0, ErrorKind::invalid_argument,
          "t_end must be positive");
  require(steps >= 1, ErrorKind::invalid_argument, "L must be positive");
  (void)stride();
  require(std::abs(static_cast<double>(steps) * dt - t_end) <= 1e-12, ErrorKind::invalid_argument,
          "L * dt must equal t_end");
  require(paths >= 2 && paths % 2 == 0, ErrorKind::invalid_argument,
          "M must be even and positive (balanced classes)");
}

const std::string& Dataset::digest() const {
  static const std::string empty;
  auto it = manifest.find("content_digest");
  return it == manifest.end() ? empty : it->second;
}

std::string content_digest(const Dataset& dataset) {
  Sha256 hasher;
  hasher.update_pod(static_cast<std::uint64_t>(dataset.size()));
  for (std::size_t p = 0; p < dataset.size(); ++p) {
    const auto& path = dataset.paths[p];
    hasher.update_pod(static_cast<std::int32_t>(dataset.labels[p]));
    hasher.update_pod(static_cast<std::uint64_t>(path.dim));
    hasher.update_pod(static_cast<std::uint64_t>(path.size()));
    hasher.update(std::span(reinterpret_cast<const unsigned char*>(path.times.data()),
                            path.times.size() * sizeof(double)));
    hasher.update(std::span(reinterpret_cast<const unsigned char*>(path.states.data()),
                            path.states.size() * sizeof(double)));
  }
  return hasher.hex_digest();
}

TimeSeriesPath simulate_fine_path(const ModelSpec& spec, std::span<const double> x0,
                                  const SimConfig& config, RandomStream& stream) {
  const std::size_t d = spec.dim;
  require(x0.size() == d, ErrorKind::dimension_mismatch,
          "initial state has dimension " + std::to_string(x0.size()) + ", model has " +
              std::to_string(d));
  const std::size_t n = config.fine_steps();
  const double delta = config.delta;
  const double sqrt_delta = std::sqrt(delta);

  TimeSeriesPath path;
  path.dim = d;
  path.grid = GridKind::fine;
  path.times.resize(n + 1);
  path.states.resize((n + 1) * d);
  for (std::size_t k = 0; k <= n; ++k) path.times[k] = static_cast<double>(k) * delta;
  std::copy(x0.begin(), x0.end(), path.states.begin());

  std::vector<double> b(d), s(d);
  for (std::size_t k = 0; k < n; ++k) {
    const auto x = path.row(k);
    auto next = path.row(k + 1);
    drift(spec, path.times[k], x, b);
    diffusion_diagonal(spec, x, s);
    for (std::size_t i = 0; i < d; ++i) {
      next[i] = x[i] + b[i] * delta + s[i] * sqrt_delta * stream.normal();
      if (!std::isfinite(next[i])) {
        fail(ErrorKind::non_finite, "non-finite state at step " + std::to_string(k + 1) +
                                        " for model " + std::string(to_string(spec.family)));
      }
    }
  }
  return path;
}

TimeSeriesPath downsample(const TimeSeriesPath& fine, std::size_t stride) {
  require(stride >= 1 && fine.size() >= 1 && (fine.size() - 1) % stride == 0,
          ErrorKind::invalid_argument,
          "stride " + std::to_string(stride) + " does not divide " +
              std::to_string(fine.size() == 0 ? 0 : fine.size() - 1) + " fine steps");
  const std::size_t count = (fine.size() - 1) / stride + 1;
  TimeSeriesPath out;
  out.dim = fine.dim;
  out.grid = GridKind::observed;
  out.times.resize(count);
  out.states.resize(count * fine.dim);
  for (std::size_t k = 0; k < count; ++k) {
    out.times[k] = fine.times[k * stride];
    const auto src = fine.row(k * stride);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

Manifest describe_generation(const ModelPair& pair, const SimConfig& config, bool keep_fine) {
  Manifest manifest;
  manifest["schema_version"] = std::to_string(kSchemaVersion);
  manifest["tool_version"] = std::string(kToolVersion);
  for (const auto& [key, value] : model_parameters(pair)) manifest["model." + key] = value;
  manifest["sim.delta"] = format_double(config.delta);
  manifest["sim.dt"] = format_double(config.dt);
  manifest["sim.t_end"] = format_double(config.t_end);
  manifest["sim.L"] = std::to_string(config.steps);
  manifest["sim.M"] = std::to_string(config.paths);
  manifest["sim.seed"] = std::to_string(config.seed);
  manifest["sim.d"] = std::to_string(pair.dim());
  manifest["sim.stride"] = std::to_string(config.stride());
  manifest["sim.initial_condition"] = "standard-normal";
  manifest["sim.scheme"] = "euler-maruyama";
  manifest["keep_fine"] = keep_fine ? "1" : "0";
  return manifest;
}

SimConfig sim_config_from_manifest(const Manifest& manifest) {
  auto get = [&](const char* key) -> const std::string& {
    auto it = manifest.find(key);
    require(it != manifest.end(), ErrorKind::schema, std::string("manifest lacks '") + key + "'");
    return it->second;
  };
  SimConfig config;
  config.delta = parse_double(get("sim.delta"));
  config.dt = parse_double(get("sim.dt"));
  config.t_end = parse_double(get("sim.t_end"));
  config.steps = static_cast<std::size_t>(parse_int(get("sim.L")));
  config.paths = static_cast<std::size_t>(parse_int(get("sim.M")));
  config.seed = std::stoull(get("sim.seed"));
  return config;
}

Dataset generate_dataset(const ModelPair& pair, const SimConfig& config, bool keep_fine) {
  pair.validate();
  config.validate();
  const std::size_t m = config.paths;
  const std::size_t per_class = m / 2;
  const std::size_t d = pair.dim();
  const std::size_t stride = config.stride();

  Dataset dataset;
  dataset.pair = pair;
  dataset.config = config;
  dataset.paths.resize(m);
  dataset.labels.resize(m);
  if (keep_fine) dataset.fine_paths.resize(m);

  std::vector<double> initial(m * d);
  for (std::size_t p = 0; p < m; ++p) {
    const int label = p < per_class ? 0 : 1;
    const auto index = static_cast<std::uint32_t>(p % per_class);
    RandomStream stream(config.seed, StreamDomain::initial_condition,
                        static_cast<std::uint32_t>(label), index);
    for (std::size_t i = 0; i < d; ++i) initial[p * d + i] = stream.normal();
    dataset.labels[p] = label;
  }

  parallel_for(m, [&](std::size_t p) {
    const int label = dataset.labels[p];
    const auto index = static_cast<std::uint32_t>(p % per_class);
    RandomStream noise(config.seed, StreamDomain::path_noise, static_cast<std::uint32_t>(label),
                       index);
    try {
      TimeSeriesPath fine = simulate_fine_path(
          pair[label], std::span<const double>(initial).subspan(p * d, d), config, noise);
      dataset.paths[p] = downsample(fine, stride);
      if (keep_fine) dataset.fine_paths[p] = std::move(fine);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (class " + std::to_string(label) +
                                ", path " + std::to_string(index) + ")");
    }
  });

  dataset.manifest = describe_generation(pair, config, keep_fine);
  dataset.manifest["content_digest"] = content_digest(dataset);
  return dataset;
}

}  // namespace lrtbench
