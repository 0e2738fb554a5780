#pragma once

#include "uqkf/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace uqkf {

/// Axis-aligned box; infinite bounds leave a coordinate free.
struct Box {
  Vector lower;
  Vector upper;
  Vector project(const Vector& u) const { return u.cwiseMax(lower).cwiseMin(upper); }
};

/// Deterministic map G: R^n -> R^d. When a domain is declared, inputs are
/// projected onto it before evaluation: G is only defined there.
class ForwardModel {
 public:
  using Map = std::function<Vector(const Vector&)>;

  ForwardModel(std::string name, Index input_dim, Index output_dim, Map map,
               std::optional<Box> domain = std::nullopt);

  const std::string& name() const { return name_; }
  Index input_dim() const { return input_dim_; }
  Index output_dim() const { return output_dim_; }
  const std::optional<Box>& domain() const { return domain_; }

  Vector operator()(const Vector& u) const;

 private:
  std::string name_;
  Index input_dim_;
  Index output_dim_;
  Map map_;
  std::optional<Box> domain_;
};

}  // namespace uqkf
