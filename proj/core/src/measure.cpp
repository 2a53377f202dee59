#include "redlat/measure.hpp"

#include <cmath>

namespace redlat {

DiscreteMeasureSpace::DiscreteMeasureSpace(Eigen::VectorXd weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 1) {
    throw std::invalid_argument("measure space needs at least one atom");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument(
          "measure space weights must be strictly positive and finite");
    }
  }
}

SpaceDescriptor::SpaceDescriptor(double exponent, DiscreteMeasureSpace base)
    : exponent_(exponent), base_(std::move(base)) {
  if (!(exponent_ > 0.0)) {
    throw std::invalid_argument("exponent must lie in (0, inf]");
  }
}

SpaceDescriptor::SpaceDescriptor(double exponent, DiscreteMeasureSpace base,
                                 Eigen::MatrixXd related_map)
    : SpaceDescriptor(exponent, std::move(base)) {
  if (related_map.rows() != base_.atom_count()) {
    throw std::invalid_argument(
        "related map must have one row per atom of the base lattice");
  }
  if (related_map.cols() < 1) {
    throw std::invalid_argument("related map needs at least one column");
  }
  related_map_ = std::move(related_map);
}

int SpaceDescriptor::dimension() const {
  return related_map_ ? static_cast<int>(related_map_->cols())
                      : base_.atom_count();
}

VectorFunction::VectorFunction(SpaceDescriptor space,
                               Eigen::MatrixXd components)
    : space_(std::move(space)), components_(std::move(components)) {
  if (components_.rows() < 1) {
    throw std::invalid_argument("vector function needs at least one component");
  }
  if (components_.cols() != space_.dimension()) {
    throw std::invalid_argument(
        "component length does not match the space dimension");
  }
  if (!components_.allFinite()) {
    throw std::invalid_argument("vector function entries must be finite");
  }
}

double weighted_p_norm(const Eigen::VectorXd& values,
                       const Eigen::VectorXd& weights, double p) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("value/weight length mismatch");
  }
  const Eigen::ArrayXd a = values.array().abs();
  if (std::isinf(p)) {
    return a.maxCoeff();
  }
  // Scale by the max so that |f/m|^p stays in [0,1]; zero values contribute 0.
  const double m = a.maxCoeff();
  if (m == 0.0) return 0.0;
  const double acc = (weights.array() * (a / m).pow(p)).sum();
  return m * std::pow(acc, 1.0 / p);
}

double quasi_norm(const SpaceDescriptor& space, const Eigen::VectorXd& f) {
  if (f.size() != space.dimension()) {
    throw std::invalid_argument("function length does not match the space");
  }
  if (space.related_map()) {
    return weighted_p_norm(*space.related_map() * f, space.base().weights(),
                           space.exponent());
  }
  return weighted_p_norm(f, space.base().weights(), space.exponent());
}

double quasi_triangle_constant(double p) {
  if (std::isinf(p) || p >= 1.0) return 1.0;
  return std::pow(2.0, 1.0 / p - 1.0);
}

double quasi_triangle_constant(const SpaceDescriptor& space) {
  return quasi_triangle_constant(space.exponent());
}

double directional_norm(const VectorFunction& x, const Eigen::VectorXd& e) {
  if (e.size() != x.vector_dim()) {
    throw std::invalid_argument("direction length does not match vector dim");
  }
  return quasi_norm(x.space(), x.components().transpose() * e);
}

Eigen::MatrixXd effective_components(const VectorFunction& x) {
  if (x.space().related_map()) {
    return x.components() * x.space().related_map()->transpose();
  }
  return x.components();
}

}  // namespace redlat
