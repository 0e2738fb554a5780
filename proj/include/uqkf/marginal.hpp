#pragma once

#include "uqkf/random.hpp"
#include "uqkf/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace uqkf {

struct Gaussian {
  double mean = 0.0;
  double variance = 1.0;
};

struct Uniform {
  double lower = 0.0;
  double upper = 1.0;
};

/// One independent prior factor.
class Marginal1D {
 public:
  Marginal1D(Gaussian g);
  Marginal1D(Uniform u);

  bool is_gaussian() const { return std::holds_alternative<Gaussian>(kind_); }
  const Gaussian& gaussian() const { return std::get<Gaussian>(kind_); }
  const Uniform& uniform() const { return std::get<Uniform>(kind_); }

  double mean() const;
  double variance() const;
  double pdf(double x) const;
  double log_pdf(double x) const;
  /// Maps a germ draw (standard normal or uniform on [-1, 1]) to this law.
  double from_germ(double xi) const;
  double draw(CounterRng& rng) const;
  std::string describe() const;

 private:
  std::variant<Gaussian, Uniform> kind_;
};

/// Product of independent marginals over R^n.
class ProductPrior {
 public:
  explicit ProductPrior(std::vector<Marginal1D> marginals);

  Index dim() const { return static_cast<Index>(marginals_.size()); }
  const Marginal1D& operator[](Index k) const { return marginals_[static_cast<std::size_t>(k)]; }
  const std::vector<Marginal1D>& marginals() const { return marginals_; }

  Vector mean() const;
  Matrix covariance() const;
  double log_pdf(const Vector& u) const;
  Vector draw(CounterRng& rng) const;

 private:
  std::vector<Marginal1D> marginals_;
};

}  // namespace uqkf
