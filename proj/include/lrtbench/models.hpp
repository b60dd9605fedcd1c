#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lrtbench {

enum class ModelFamily {
  constant_drift,        // dX = theta dt + sigma dB
  potential_gradient,    // dX = -grad V_theta(X) dt + sigma dB, V = sum_j theta_j |x|^j
  linear_nonlinear,      // dX = (th1 x + th2 cos(pi x) + th3 sin(pi t)) dt + X dB
  ou,                    // dX = theta X dt + sigma dB
  interacting_particles  // pairwise piecewise-constant kernel interaction
};

std::string_view to_string(ModelFamily family);
/// Accepts the canonical names above (with '-' or '_') plus "bm" for constant drift.
ModelFamily parse_family(std::string_view name);

/// One drift parameterization of a diffusion family.
///
/// `theta` layout per family:
///   constant_drift        length dim (the drift vector)
///   potential_gradient    length 5 (coefficients of |x|^0 .. |x|^4)
///   linear_nonlinear      length 3 (x, cos(pi x), sin(pi t) coefficients)
///   ou                    length 1
///   interacting_particles kernel levels, one per breakpoint interval
struct ModelSpec {
  ModelFamily family = ModelFamily::constant_drift;
  std::vector<double> theta;
  std::size_t dim = 1;
  double sigma = 1.0;

  // interacting_particles only
  std::size_t agents = 0;
  std::size_t agent_dim = 0;
  std::vector<double> kernel_breaks;
  // +1 uses (X^j - X^i) for the updated agent j; -1 flips to (X^i - X^j).
  int interaction_sign = +1;

  /// Structural checks; sigma may be zero here (tests use noiseless paths).
  void validate() const;
};

struct ModelPair {
  ModelSpec spec0;  // class theta_0, label 0
  ModelSpec spec1;  // class theta_1, label 1

  ModelSpec& operator[](int label) { return label == 0 ? spec0 : spec1; }
  const ModelSpec& operator[](int label) const { return label == 0 ? spec0 : spec1; }
  ModelFamily family() const { return spec0.family; }
  std::size_t dim() const { return spec0.dim; }

  /// Pair with the classes exchanged; the log-likelihood ratio changes sign.
  ModelPair swapped() const { return {spec1, spec0}; }
  /// Same family, dimension and diffusion coefficient on both sides.
  void validate() const;
};

using ParameterTable = std::map<std::string, std::string>;

/// Default parameterization of a family with overrides applied. Keys may carry a
/// "model." prefix. Recognized keys: d, sigma, theta0, theta1 (comma lists),
/// a0, a1 (constant drift), N, d1, kernel_breaks, ips_sign (interacting particles).
ModelPair make_model_pair(ModelFamily family, const ParameterTable& overrides = {});

/// Full parameter listing ("family" plus every override key) that reproduces
/// the pair through model_pair_from_parameters.
ParameterTable model_parameters(const ModelPair& pair);
ModelPair model_pair_from_parameters(const ParameterTable& table);

void drift(const ModelSpec& spec, double t, std::span<const double> x, std::span<double> out);
std::vector<double> drift(const ModelSpec& spec, double t, std::span<const double> x);

/// Diagonal of sigma(x); every shipped family has a diagonal diffusion matrix.
void diffusion_diagonal(const ModelSpec& spec, std::span<const double> x, std::span<double> out);
Eigen::MatrixXd diffusion_coeff(const ModelSpec& spec, std::span<const double> x);
Eigen::MatrixXd covariance(const ModelSpec& spec, std::span<const double> x);

/// Piecewise-constant kernel on right-open intervals [b_{k-1}, b_k); zero past
/// the last breakpoint.
double interaction_kernel(const ModelSpec& spec, double r);

/// V_theta(x) for the potential-gradient family.
double potential(const ModelSpec& spec, std::span<const double> x);

}  // namespace lrtbench
