#include "uqkf/ensemble.hpp"

#include "uqkf/parallel.hpp"
#include "uqkf/random.hpp"

namespace uqkf {

Ensemble::Ensemble(Matrix members) : members_(std::move(members)) {
  require(members_.cols() >= 2, "ensemble needs at least two members");
  require(members_.rows() >= 1, "ensemble members need dimension >= 1");
}

Ensemble sample(const ProductPrior& prior, Index M, std::uint64_t seed) {
  require(M >= 2, "sample needs M >= 2");
  Matrix members(prior.dim(), M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
    CounterRng rng(seed, StreamPurpose::Prior, j);
    members.col(static_cast<Index>(j)) = prior.draw(rng);
  });
  return Ensemble(std::move(members));
}

Ensemble sample(const PceExpansion& pce, Index M, std::uint64_t seed) {
  require(M >= 2, "sample needs M >= 2");
  const Index germ_dim = static_cast<Index>(pce.germ().size());
  Matrix members(pce.dim(), M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
    CounterRng rng(seed, StreamPurpose::Germ, j);
    Vector xi(germ_dim);
    for (Index k = 0; k < germ_dim; ++k)
      xi(k) = pce.germ()[static_cast<std::size_t>(k)] == GermFamily::Hermite ? rng.standard_normal()
                                                                             : rng.symmetric_uniform();
    members.col(static_cast<Index>(j)) = pce.evaluate(xi);
  });
  return Ensemble(std::move(members));
}

}  // namespace uqkf
