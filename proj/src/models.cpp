#include "lrtbench/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "lrtbench/error.hpp"
#include "lrtbench/text.hpp"

namespace lrtbench {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dim(const ModelSpec& spec, std::size_t n, const char* what) {
  require(n == spec.dim, ErrorKind::dimension_mismatch,
          std::string(what) + ": expected dimension " + std::to_string(spec.dim) + ", got " +
              std::to_string(n));
}

std::size_t theta_length(const ModelSpec& spec) {
  switch (spec.family) {
    case ModelFamily::constant_drift: return spec.dim;
    case ModelFamily::potential_gradient: return 5;
    case ModelFamily::linear_nonlinear: return 3;
    case ModelFamily::ou: return 1;
    case ModelFamily::interacting_particles: return spec.kernel_breaks.size();
  }
  return 0;
}

std::string strip_prefix(const std::string& key) {
  constexpr std::string_view prefix = "model.";
  if (key.starts_with(prefix)) return key.substr(prefix.size());
  return key;
}

}  // namespace

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::constant_drift: return "constant-drift";
    case ModelFamily::potential_gradient: return "potential-gradient";
    case ModelFamily::linear_nonlinear: return "linear-nonlinear";
    case ModelFamily::ou: return "ou";
    case ModelFamily::interacting_particles: return "interacting-particles";
  }
  return "unknown";
}

ModelFamily parse_family(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "constant-drift" || n == "bm") return ModelFamily::constant_drift;
  if (n == "potential-gradient") return ModelFamily::potential_gradient;
  if (n == "linear-nonlinear") return ModelFamily::linear_nonlinear;
  if (n == "ou") return ModelFamily::ou;
  if (n == "interacting-particles" || n == "ips") return ModelFamily::interacting_particles;
  fail(ErrorKind::unknown_family, "unknown model family '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
  require(dim >= 1, ErrorKind::invalid_argument, "dimension must be positive");
  require(std::isfinite(sigma) && sigma >= 0.0, ErrorKind::invalid_argument,
          "sigma must be finite and nonnegative");
  if (family == ModelFamily::interacting_particles) {
    require(agents >= 1 && agent_dim >= 1, ErrorKind::invalid_argument,
            "interacting particles need N >= 1 and d1 >= 1");
    require(dim == agents * agent_dim, ErrorKind::invalid_argument,
            "interacting particles need d = N * d1");
    require(!kernel_breaks.empty(), ErrorKind::invalid_argument, "kernel needs breakpoints");
    for (std::size_t k = 0; k < kernel_breaks.size(); ++k) {
      require(std::isfinite(kernel_breaks[k]) && kernel_breaks[k] > 0.0 &&
                  (k == 0 || kernel_breaks[k] > kernel_breaks[k - 1]),
              ErrorKind::invalid_argument, "kernel breakpoints must be positive and increasing");
    }
    require(interaction_sign == 1 || interaction_sign == -1, ErrorKind::invalid_argument,
            "ips_sign must be +1 or -1");
  }
  require(theta.size() == theta_length(*this), ErrorKind::invalid_argument,
          std::string("theta for ") + std::string(to_string(family)) + " must have length " +
              std::to_string(theta_length(*this)));
  for (double v : theta)
    require(std::isfinite(v), ErrorKind::invalid_argument, "theta entries must be finite");
}

void ModelPair::validate() const {
  spec0.validate();
  spec1.validate();
  require(spec0.family == spec1.family && spec0.dim == spec1.dim && spec0.sigma == spec1.sigma &&
              spec0.agents == spec1.agents && spec0.agent_dim == spec1.agent_dim &&
              spec0.kernel_breaks == spec1.kernel_breaks &&
              spec0.interaction_sign == spec1.interaction_sign,
          ErrorKind::invalid_argument,
          "model pair must share family, dimension and diffusion coefficient");
}

ModelPair make_model_pair(ModelFamily family, const ParameterTable& overrides) {
  ParameterTable table;
  for (const auto& [key, value] : overrides) table[strip_prefix(key)] = value;

  std::set<std::string> allowed = {"d", "sigma", "theta0", "theta1", "family"};
  if (family == ModelFamily::constant_drift) allowed.insert({"a0", "a1"});
  if (family == ModelFamily::interacting_particles) {
    allowed.erase("d");
    allowed.insert({"N", "d1", "kernel_breaks", "ips_sign"});
  }
  for (const auto& [key, value] : table) {
    require(allowed.contains(key), ErrorKind::invalid_argument,
            "unrecognized parameter '" + key + "' for family " + std::string(to_string(family)));
  }
  if (table.contains("family"))
    require(parse_family(table.at("family")) == family, ErrorKind::invalid_argument,
            "family parameter disagrees with requested family");

  auto get = [&](const std::string& key) -> const std::string* {
    auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
  };

  ModelSpec base;
  base.family = family;
  base.sigma = 1.0;
  if (auto* v = get("sigma")) base.sigma = parse_double(*v);
  require(std::isfinite(base.sigma) && base.sigma > 0.0, ErrorKind::invalid_argument,
          "sigma must be positive");

  std::vector<double> theta0, theta1;
  switch (family) {
    case ModelFamily::constant_drift: {
      if (auto* v = get("d")) base.dim = static_cast<std::size_t>(parse_int(*v));
      require(base.dim >= 1, ErrorKind::invalid_argument, "d must be positive");
      double a0 = 0.0, a1 = 1.0;
      if (auto* v = get("a0")) a0 = parse_double(*v);
      if (auto* v = get("a1")) a1 = parse_double(*v);
      theta0.assign(base.dim, a0);
      theta1.assign(base.dim, a1);
      break;
    }
    case ModelFamily::potential_gradient:
      if (auto* v = get("d")) base.dim = static_cast<std::size_t>(parse_int(*v));
      theta0 = {0.25, 0.0, -0.5, 0.0, 0.25};  // 1/4 (|x|^2 - 1)^2
      theta1 = {0.0, 0.0, 0.0, 0.0, 0.25};    // 1/4 |x|^4
      break;
    case ModelFamily::linear_nonlinear:
      if (auto* v = get("d")) base.dim = static_cast<std::size_t>(parse_int(*v));
      theta0 = {-kPi, 0.0, 1.0};
      theta1 = {-0.1, 1.0, 0.0};
      break;
    case ModelFamily::ou:
      if (auto* v = get("d")) base.dim = static_cast<std::size_t>(parse_int(*v));
      theta0 = {-1.0};
      theta1 = {-0.5};
      break;
    case ModelFamily::interacting_particles: {
      base.agents = 3;
      base.agent_dim = 2;
      if (auto* v = get("N")) base.agents = static_cast<std::size_t>(parse_int(*v));
      if (auto* v = get("d1")) base.agent_dim = static_cast<std::size_t>(parse_int(*v));
      base.dim = base.agents * base.agent_dim;
      base.kernel_breaks = {std::sqrt(2.0), 2.0};
      if (auto* v = get("kernel_breaks")) base.kernel_breaks = parse_list(*v);
      if (auto* v = get("ips_sign")) base.interaction_sign = static_cast<int>(parse_int(*v));
      theta0 = {0.2, 2.0};
      theta1 = {2.0, 0.2};
      break;
    }
  }
  if (auto* v = get("theta0")) theta0 = parse_list(*v);
  if (auto* v = get("theta1")) theta1 = parse_list(*v);

  ModelPair pair{base, base};
  pair.spec0.theta = std::move(theta0);
  pair.spec1.theta = std::move(theta1);
  pair.validate();
  return pair;
}

ParameterTable model_parameters(const ModelPair& pair) {
  ParameterTable table;
  table["family"] = std::string(to_string(pair.family()));
  table["sigma"] = format_double(pair.spec0.sigma);
  table["theta0"] = format_list(pair.spec0.theta);
  table["theta1"] = format_list(pair.spec1.theta);
  if (pair.family() == ModelFamily::interacting_particles) {
    table["N"] = std::to_string(pair.spec0.agents);
    table["d1"] = std::to_string(pair.spec0.agent_dim);
    table["kernel_breaks"] = format_list(pair.spec0.kernel_breaks);
    table["ips_sign"] = std::to_string(pair.spec0.interaction_sign);
  } else {
    table["d"] = std::to_string(pair.dim());
  }
  return table;
}

ModelPair model_pair_from_parameters(const ParameterTable& table) {
  auto it = table.find("family");
  require(it != table.end(), ErrorKind::schema, "parameter table lacks 'family'");
  return make_model_pair(parse_family(it->second), table);
}

void drift(const ModelSpec& spec, double t, std::span<const double> x, std::span<double> out) {
  check_dim(spec, x.size(), "drift");
  check_dim(spec, out.size(), "drift output");
  const auto& th = spec.theta;
  switch (spec.family) {
    case ModelFamily::constant_drift:
      std::copy(th.begin(), th.end(), out.begin());
      return;
    case ModelFamily::potential_gradient: {
      // grad |x|^j = j |x|^(j-2) x
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      const double r = std::sqrt(r2);
      double radial = 2.0 * th[2] + 3.0 * th[3] * r + 4.0 * th[4] * r2;
      if (r > 0.0) radial += th[1] / r;
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = -radial * x[i];
      return;
    }
    case ModelFamily::linear_nonlinear: {
      const double forcing = th[2] * std::sin(kPi * t);
      for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = th[0] * x[i] + th[1] * std::cos(kPi * x[i]) + forcing;
      return;
    }
    case ModelFamily::ou:
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = th[0] * x[i];
      return;
    case ModelFamily::interacting_particles: {
      const std::size_t n = spec.agents;
      const std::size_t d1 = spec.agent_dim;
      const double scale = static_cast<double>(spec.interaction_sign) / static_cast<double>(n);
      std::fill(out.begin(), out.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          if (i == j) continue;
          double r2 = 0.0;
          for (std::size_t c = 0; c < d1; ++c) {
            const double diff = x[j * d1 + c] - x[i * d1 + c];
            r2 += diff * diff;
          }
          const double phi = interaction_kernel(spec, std::sqrt(r2));
          if (phi == 0.0) continue;
          for (std::size_t c = 0; c < d1; ++c)
            out[j * d1 + c] += scale * phi * (x[j * d1 + c] - x[i * d1 + c]);
        }
      }
      return;
    }
  }
}

std::vector<double> drift(const ModelSpec& spec, double t, std::span<const double> x) {
  std::vector<double> out(spec.dim);
  drift(spec, t, x, out);
  return out;
}

void diffusion_diagonal(const ModelSpec& spec, std::span<const double> x, std::span<double> out) {
  check_dim(spec, x.size(), "diffusion");
  check_dim(spec, out.size(), "diffusion output");
  if (spec.family == ModelFamily::linear_nonlinear) {
    std::copy(x.begin(), x.end(), out.begin());
  } else {
    std::fill(out.begin(), out.end(), spec.sigma);
  }
}

Eigen::MatrixXd diffusion_coeff(const ModelSpec& spec, std::span<const double> x) {
  std::vector<double> diag(spec.dim);
  diffusion_diagonal(spec, x, diag);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(spec.dim, spec.dim);
  for (std::size_t i = 0; i < spec.dim; ++i) sigma(i, i) = diag[i];
  return sigma;
}

Eigen::MatrixXd covariance(const ModelSpec& spec, std::span<const double> x) {
  const Eigen::MatrixXd sigma = diffusion_coeff(spec, x);
  return sigma * sigma.transpose();
}

double interaction_kernel(const ModelSpec& spec, double r) {
  require(r >= 0.0, ErrorKind::invalid_argument, "interaction kernel needs r >= 0");
  const auto& breaks = spec.kernel_breaks;
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), r);
  if (it == breaks.end()) return 0.0;
  return spec.theta[static_cast<std::size_t>(it - breaks.begin())];
}

double potential(const ModelSpec& spec, std::span<const double> x) {
  require(spec.family == ModelFamily::potential_gradient, ErrorKind::family_mismatch,
          "potential is defined for the potential-gradient family only");
  check_dim(spec, x.size(), "potential");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  double value = 0.0;
  double power = 1.0;
  for (double coefficient : spec.theta) {
    value += coefficient * power;
    power *= r;
  }
  return value;
}

}  // namespace lrtbench
