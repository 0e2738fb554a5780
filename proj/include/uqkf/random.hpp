#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace uqkf {

/// Purposes keep streams for different draws of one run disjoint.
enum class StreamPurpose : std::uint64_t {
  Prior = 1,
  Germ = 2,
  ForecastNoise = 3,
  ReferencePrior = 4,
  ReferenceNoise = 5,
  MonteCarloMoments = 6,
  TestFunctions = 7,
};

/// Counter-based generator: the output is SplitMix64 applied to
/// key + counter, with the key derived from (seed, purpose, step, member).
/// Each ensemble member owns its stream, so draws do not depend on the
/// order in which members are evaluated.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, StreamPurpose purpose, std::uint64_t member,
             std::uint64_t step = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform in the open interval (0, 1).
  double uniform();
  /// Uniform in [-1, 1].
  double symmetric_uniform() { return 2.0 * uniform() - 1.0; }
  double standard_normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace uqkf
