#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <vector>

#include "redlat/measure.hpp"

namespace redlat {

inline constexpr std::uint64_t kDefaultReduceSeed = 0x5EED0F00DULL;

/// Positive semi-definite matrix A with c_low |A e| <= ||x . e|| <= c_high
/// |A e| over the sampled directions, plus an orthonormal basis of the
/// directions annihilated by x.
struct ReducingMatrix {
  Eigen::MatrixXd matrix;        // n x n, symmetric PSD
  Eigen::MatrixXd kernel_basis;  // n x k_dim, orthonormal columns (may be empty)
  double c_low = 1.0;
  double c_high = 1.0;
  int n_directions = 0;
  double tol = 0.0;
};

struct DirectionalProfile {
  std::vector<Eigen::VectorXd> directions;  // unit vectors
  std::vector<double> values;               // matching directional norms
};

struct ReduceOptions {
  int directions = 0;  // 0 = default max(64, 16 n^2)
  double tol = 1e-9;
  std::uint64_t seed = kDefaultReduceSeed;
};

int default_direction_count(int n);

/// Orthonormal basis of {e : x . e == 0}, computed from the singular values
/// of the raw component matrix (threshold 1e-9 times the largest one).
Eigen::MatrixXd kernel_of(const VectorFunction& x);

/// Same, but on the components with the related map applied; this is the
/// nullspace of the induced directional norm.
Eigen::MatrixXd effective_kernel(const VectorFunction& x);

/// Minimum-volume origin-centered ellipsoid of an antipodally symmetric,
/// spanning point set: returns symmetric positive definite Q with
/// {u : |Q u| <= 1} enclosing all points, optimal within relative tol.
/// Khachiyan's weight update with Wolfe-Atwood away steps.
Eigen::MatrixXd mvee(const std::vector<Eigen::VectorXd>& points, double tol);

/// Reducing matrix of an arbitrary directional norm on R^n whose nullspace
/// is spanned by the columns of kernel_basis.
ReducingMatrix reduce_directional_norm(
    const std::function<double(const Eigen::VectorXd&)>& norm, int n,
    const Eigen::MatrixXd& kernel_basis, const ReduceOptions& opts = {});

/// Reducing matrix of a vector function: samples the unit ball boundary of
/// e -> ||x . e||, fits the enclosing ellipsoid on the kernel complement and
/// re-measures the two-sided constants on a fresh direction sample.
ReducingMatrix reducing_matrix(const VectorFunction& x,
                               const ReduceOptions& opts = {});

/// Largest singular value of a.matrix * b.matrix.
double reducing_product(const ReducingMatrix& a, const ReducingMatrix& b);

}  // namespace redlat
