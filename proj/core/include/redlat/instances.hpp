#pragma once

#include <cstdint>

#include "redlat/bilinear.hpp"
#include "redlat/measure.hpp"
#include "redlat/tensor.hpp"

namespace redlat {

/// Seeded random vector function: components are Gaussian mixtures over the
/// atoms, post-normalized in their own space. Atoms sit at the midpoints of a
/// uniform partition of [0,1] with equal weights 1/S, so instances with the
/// same seed converge to a common continuum limit as S grows.
VectorFunction random_lattice_instance(int atoms, int n, double exponent,
                                       std::uint64_t seed);

/// Same generator with uniform unit weights (Example-style spaces).
VectorFunction random_unit_weight_instance(int atoms, int n, double exponent,
                                           std::uint64_t seed);

/// Two independent factors over independent spaces, sharing the dimension.
TensorPair random_tensor_pair(int atoms_x, int atoms_y, int n, double p,
                              double q, std::uint64_t seed);

/// The orthonormal-indicator instance on S = n unit-weight atoms: component i
/// is the indicator of atom i. Its pointwise dot pairing integrates to n.
VectorFunction indicator_instance(int n, double exponent);

enum class SplitCase { kCanonical, kGeneralSecondary, kInvertiblePrimary, kSingularPrimary };

struct SplitInstance {
  BilinearTable table;
  TwoTermBound bound;
  SplitCase kind;
  Eigen::VectorXd alpha, beta;  // populated for the canonical case
};

struct SplitInstanceOptions {
  int max_dim = 3;
  int target_atoms = 6;
  double target_exponent = 1.0;
  bool scalar_target = false;  // 1-atom target so Z-norms are absolute values
  double amplitude = 0.01;     // table scale relative to the bound
};

/// Randomized two-term-bounded operator spanning one of the four splitting
/// regimes. The table is scaled so the bound holds with margin on a dense
/// pair sample.
SplitInstance random_split_instance(SplitCase kind,
                                    const SplitInstanceOptions& opts,
                                    std::uint64_t seed);

}  // namespace redlat
