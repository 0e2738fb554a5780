#include "uqkf/forward_model.hpp"

namespace uqkf {

ForwardModel::ForwardModel(std::string name, Index input_dim, Index output_dim, Map map,
                           std::optional<Box> domain)
    : name_(std::move(name)),
      input_dim_(input_dim),
      output_dim_(output_dim),
      map_(std::move(map)),
      domain_(std::move(domain)) {
  require(input_dim_ >= 1 && output_dim_ >= 1, "forward model dimensions must be >= 1");
  if (domain_)
    require(domain_->lower.size() == input_dim_ && domain_->upper.size() == input_dim_,
            "forward model domain has wrong dimension");
}

Vector ForwardModel::operator()(const Vector& u) const {
  require(u.size() == input_dim_, "forward model '" + name_ + "': wrong input dimension");
  Vector g = domain_ ? map_(domain_->project(u)) : map_(u);
  if (g.size() != output_dim_) throw Error("forward model '" + name_ + "' returned wrong output dimension");
  return g;
}

}  // namespace uqkf
