#pragma once

#include "uqkf/forward_model.hpp"
#include "uqkf/marginal.hpp"
#include "uqkf/types.hpp"

#include <string>
#include <vector>

namespace uqkf {

// Square model: G(u) = u^2.

double square_forward(double u);
ForwardModel square_model();

// Elliptic model: -(exp(u1) p')' = 1 on [0, 1], p(0) = 0, p(1) = u2,
// observed at x = 0.25 and x = 0.75.

/// p(x) = u2 x + exp(-u1) x (1 - x) / 2.
double elliptic_pressure(double x, double u1, double u2);
Vector elliptic_forward(const Vector& u);
ForwardModel elliptic_model();

/// Coefficients g_n = (-1)^n sqrt(e) / sqrt(n!) of exp(-xi) in normalized
/// Hermite polynomials, n = 0..n_max.
Vector hermite_exp_coeffs(int n_max);

// RLC circuit.

struct RlcParams {
  double U0 = 0.75;
  double R = 0.5;
  double L = 1.5;
  double C = 0.5;
};

/// Voltage and current of the underdamped circuit,
/// U(t) = U0 e^{-dt}(cos(w t) + (d/w) sin(w t)), I(t) = -U0/(w L) e^{-dt} sin(w t),
/// d = R/(2L), w = sqrt(1/(LC) - d^2). Throws OverdampedError unless 1/(LC) > d^2.
Vector rlc_state(double t, const RlcParams& params);

inline constexpr int kRlcSteps = 4;
inline constexpr double kRlcStepTime = 5.0;

/// Which observation blocks an RLC forward map returns.
struct RlcMode {
  int first_step = 1;  ///< 1-based
  int last_step = kRlcSteps;

  static RlcMode simultaneous() { return {1, kRlcSteps}; }
  static RlcMode step(int n) { return {n, n}; }
  static RlcMode prefix(int n) { return {1, n}; }
};

/// (U0, L) -> (U(t_k), I(t_k)) for k in the mode's steps, t_k = 5k, with the
/// given fixed R and C. Domain: L restricted to the prior support [1, 5].
ForwardModel rlc_model(RlcMode mode, double R = 0.5, double C = 0.5);
Vector rlc_forward(const Vector& u, RlcMode mode, double R = 0.5, double C = 0.5);

/// Observation noise variance rule, evaluated at the true parameters.
enum class RlcNoiseRule {
  Linear,  ///< sigma^2 = 0.1 |x(t_n)|
  Sqrt,    ///< sigma^2 = sqrt(0.1 |x(t_n)|)
};
std::string to_string(RlcNoiseRule rule);
RlcNoiseRule rlc_noise_rule_from_string(const std::string& name);

/// Eight noise variances (interleaved U, I per step).
Vector rlc_noise_variances(RlcNoiseRule rule);

// Named problems and data presets.

/// Everything needed to pose one stationary inverse problem z = G(u) + eps.
struct Problem {
  std::string name;
  ProductPrior prior;
  ForwardModel forward;
  Matrix noise_cov;
};

Problem square_problem(double sigma);
Problem elliptic_problem();
/// Linear-Gaussian scalar problem: U ~ N(0, 1), G = id, eps ~ N(0, 1).
Problem linear_gaussian_problem();
Problem rlc_problem(RlcMode mode, RlcNoiseRule rule);

/// Data vectors: "elliptic-z", "elliptic-ztilde", "rlc-z", "rlc-ztilde".
Vector data_preset(const std::string& name);
std::vector<std::string> data_preset_names();

}  // namespace uqkf
