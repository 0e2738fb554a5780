#pragma once

#include "uqkf/types.hpp"

#include <string>
#include <vector>

namespace uqkf {

/// Germ law and its orthonormal polynomial family.
enum class GermFamily {
  Hermite,   ///< standard normal germ, normalized probabilists' Hermite
  Legendre,  ///< uniform germ on [-1, 1], normalized Legendre
};

std::string to_string(GermFamily family);
GermFamily germ_family_from_string(const std::string& name);

/// Recurrence coefficient b_n in b_{n+1} p_{n+1} = x p_n - b_n p_{n-1}.
double recurrence_coefficient(GermFamily family, int n);

/// Orthonormal polynomials p_0..p_degree evaluated at x.
Vector orthonormal_values(GermFamily family, int degree, double x);

/// Writes p_0..p_degree into out (size >= degree + 1) without allocating.
void orthonormal_values(GermFamily family, int degree, double x, double* out);

/// Gauss rule for the germ measure: nodes and probability weights (sum 1).
struct GaussRule {
  Vector nodes;
  Vector weights;
};

/// Golub-Welsch nodes, Newton-polished, with weights from the Christoffel
/// function 1 / sum_k p_k(x)^2 so tiny tail weights keep relative accuracy.
GaussRule gauss_rule(GermFamily family, int points);

}  // namespace uqkf
