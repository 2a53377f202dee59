#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace redlat {

/// Inverse of the standard normal CDF (Acklam's rational approximation plus
/// one Halley refinement; accurate to ~1e-15 over (0,1)).
double inverse_normal_cdf(double u);

/// Deterministic low-discrepancy unit vectors in R^dim, closed under sign
/// flip, always starting with the +-standard-basis directions. `count` must
/// be even and at least 2*dim.
std::vector<Eigen::VectorXd> sample_directions(int dim, int count,
                                               std::uint64_t seed);

/// Evaluation grid on the unit sphere: +-1 in 1D, equiangular in 2D,
/// Fibonacci lattice in 3D, seeded low-discrepancy points above. Used for
/// measuring suprema of bilinear ratios.
std::vector<Eigen::VectorXd> sphere_grid(int dim, int count,
                                         std::uint64_t seed);

}  // namespace redlat
