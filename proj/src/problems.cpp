#include "uqkf/problems.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace uqkf {

double square_forward(double u) { return u * u; }

ForwardModel square_model() {
  return ForwardModel("square", 1, 1, [](const Vector& u) { return Vector::Constant(1, square_forward(u(0))); });
}

double elliptic_pressure(double x, double u1, double u2) {
  return u2 * x + std::exp(-u1) * x * (1.0 - x) / 2.0;
}

Vector elliptic_forward(const Vector& u) {
  require(u.size() == 2, "elliptic_forward takes (u1, u2)");
  Vector g(2);
  g << elliptic_pressure(0.25, u(0), u(1)), elliptic_pressure(0.75, u(0), u(1));
  return g;
}

ForwardModel elliptic_model() { return ForwardModel("elliptic1d", 2, 2, elliptic_forward); }

Vector hermite_exp_coeffs(int n_max) {
  require(n_max >= 0, "hermite_exp_coeffs needs n_max >= 0");
  Vector g(n_max + 1);
  g(0) = std::exp(0.5);
  for (int n = 1; n <= n_max; ++n) g(n) = -g(n - 1) / std::sqrt(static_cast<double>(n));
  return g;
}

Vector rlc_state(double t, const RlcParams& p) {
  const double delta = p.R / (2.0 * p.L);
  const double w0_sq = 1.0 / (p.L * p.C);
  if (!(p.L > 0.0 && p.C > 0.0) || !(w0_sq > delta * delta))
    throw OverdampedError("RLC parameters are not underdamped (need 1/(LC) > (R/(2L))^2)");
  const double we = std::sqrt(w0_sq - delta * delta);
  const double envelope = p.U0 * std::exp(-delta * t);
  Vector s(2);
  s << envelope * (std::cos(we * t) + delta / we * std::sin(we * t)),
      -envelope / (we * p.L) * std::sin(we * t);
  return s;
}

Vector rlc_forward(const Vector& u, RlcMode mode, double R, double C) {
  require(u.size() == 2, "rlc_forward takes (U0, L)");
  require(1 <= mode.first_step && mode.first_step <= mode.last_step && mode.last_step <= kRlcSteps,
          "invalid RLC step range");
  const RlcParams params{u(0), R, u(1), C};
  Vector g(2 * (mode.last_step - mode.first_step + 1));
  for (int n = mode.first_step; n <= mode.last_step; ++n)
    g.segment(2 * (n - mode.first_step), 2) = rlc_state(kRlcStepTime * n, params);
  return g;
}

ForwardModel rlc_model(RlcMode mode, double R, double C) {
  const double inf = std::numeric_limits<double>::infinity();
  Box domain{Vector(2), Vector(2)};
  domain.lower << -inf, 1.0;
  domain.upper << inf, 5.0;
  const Index d = 2 * (mode.last_step - mode.first_step + 1);
  std::string name = "rlc";
  if (mode.first_step != 1 || mode.last_step != kRlcSteps)
    name += "[" + std::to_string(mode.first_step) + ":" + std::to_string(mode.last_step) + "]";
  return ForwardModel(
      name, 2, d, [mode, R, C](const Vector& u) { return rlc_forward(u, mode, R, C); }, domain);
}

std::string to_string(RlcNoiseRule rule) { return rule == RlcNoiseRule::Linear ? "linear" : "sqrt"; }

RlcNoiseRule rlc_noise_rule_from_string(const std::string& name) {
  if (name == "linear") return RlcNoiseRule::Linear;
  if (name == "sqrt") return RlcNoiseRule::Sqrt;
  throw InvalidArgument("unknown RLC noise rule '" + name + "'");
}

Vector rlc_noise_variances(RlcNoiseRule rule) {
  Vector truth(2);
  truth << RlcParams{}.U0, RlcParams{}.L;
  const Vector states = rlc_forward(truth, RlcMode::simultaneous());
  Vector var = 0.1 * states.cwiseAbs();
  if (rule == RlcNoiseRule::Sqrt) var = var.cwiseSqrt();
  return var;
}

Problem square_problem(double sigma) {
  require(sigma > 0.0, "square problem needs sigma > 0");
  return {"square", ProductPrior({Gaussian{0.0, 1.0}}), square_model(), Matrix::Constant(1, 1, sigma * sigma)};
}

Problem elliptic_problem() {
  return {"elliptic1d", ProductPrior({Gaussian{0.0, 1.0}, Uniform{90.0, 110.0}}), elliptic_model(),
          0.01 * Matrix::Identity(2, 2)};
}

Problem linear_gaussian_problem() {
  ForwardModel id("identity", 1, 1, [](const Vector& u) { return u; });
  return {"linear-gaussian", ProductPrior({Gaussian{0.0, 1.0}}), id, Matrix::Identity(1, 1)};
}

Problem rlc_problem(RlcMode mode, RlcNoiseRule rule) {
  const Vector var = rlc_noise_variances(rule).segment(2 * (mode.first_step - 1),
                                                       2 * (mode.last_step - mode.first_step + 1));
  return {"rlc", ProductPrior({Gaussian{0.5, 0.25}, Uniform{1.0, 5.0}}), rlc_model(mode),
          var.asDiagonal()};
}

Vector data_preset(const std::string& name) {
  auto make = [](std::initializer_list<double> v) {
    Vector z(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) z(i++) = x;
    return z;
  };
  if (name == "elliptic-z") return make({27.5, 79.7});
  if (name == "elliptic-ztilde") return make({23.8, 71.3});
  if (name == "rlc-z") return make({0.505, 0.237, 0.014, 0.096, 0.036, 0.011, -0.002, -0.003});
  if (name == "rlc-ztilde") return make({0.265, 0.066, 0.058, 0.002, 0.021, 0.012, 0.007, -0.01});
  throw InvalidArgument("unknown data preset '" + name + "'");
}

std::vector<std::string> data_preset_names() {
  return {"elliptic-z", "elliptic-ztilde", "rlc-z", "rlc-ztilde"};
}

}  // namespace uqkf
