#pragma once

#include <Eigen/Core>

#include <limits>
#include <optional>
#include <stdexcept>

namespace redlat {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Finite atomic measure space: a list of atoms with strictly positive weights.
class DiscreteMeasureSpace {
 public:
  explicit DiscreteMeasureSpace(Eigen::VectorXd weights);

  int atom_count() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }

  double total_mass() const { return weights_.sum(); }

 private:
  Eigen::VectorXd weights_;
};

/// An L^p lattice over a measure space, optionally precomposed with a linear
/// map J so that the norm of f is the lattice norm of J f.
/// Exponents live in (0, inf]; pass kInfExponent for the sup norm.
class SpaceDescriptor {
 public:
  SpaceDescriptor(double exponent, DiscreteMeasureSpace base);
  SpaceDescriptor(double exponent, DiscreteMeasureSpace base,
                  Eigen::MatrixXd related_map);

  double exponent() const { return exponent_; }
  const DiscreteMeasureSpace& base() const { return base_; }
  const std::optional<Eigen::MatrixXd>& related_map() const {
    return related_map_;
  }

  /// Dimension of the elements this space norms: the column count of the
  /// related map when present, the atom count otherwise.
  int dimension() const;

 private:
  double exponent_;
  DiscreteMeasureSpace base_;
  std::optional<Eigen::MatrixXd> related_map_;
};

inline SpaceDescriptor lp_space(double p, Eigen::VectorXd weights) {
  return SpaceDescriptor(p, DiscreteMeasureSpace(std::move(weights)));
}

/// An element of X (tensor) R^n: n component functions sampled on the atoms,
/// stored as the rows of an n x dim matrix.
class VectorFunction {
 public:
  VectorFunction(SpaceDescriptor space, Eigen::MatrixXd components);

  const SpaceDescriptor& space() const { return space_; }
  const Eigen::MatrixXd& components() const { return components_; }
  int vector_dim() const { return static_cast<int>(components_.rows()); }

  VectorFunction scaled(double factor) const {
    return VectorFunction(space_, factor * components_);
  }

 private:
  SpaceDescriptor space_;
  Eigen::MatrixXd components_;
};

/// Weighted p-quasi-norm of a plain value vector (no related map involved).
double weighted_p_norm(const Eigen::VectorXd& values,
                       const Eigen::VectorXd& weights, double p);

/// (sum_s w_s |f(s)|^p)^(1/p), max over atoms for p = inf. Applies the
/// related map first when the space carries one.
double quasi_norm(const SpaceDescriptor& space, const Eigen::VectorXd& f);

/// max(1, 2^(1/p - 1)): the constant in the quasi-triangle inequality.
double quasi_triangle_constant(double p);
double quasi_triangle_constant(const SpaceDescriptor& space);

/// Norm of x . e = sum_i e_i x_i, the semi-quasi-norm on R^n induced by x.
double directional_norm(const VectorFunction& x, const Eigen::VectorXd& e);

/// Component matrix with the related map applied, so that the norm of x . e
/// is the plain lattice norm of (effective_components(x))^T e.
Eigen::MatrixXd effective_components(const VectorFunction& x);

}  // namespace redlat
