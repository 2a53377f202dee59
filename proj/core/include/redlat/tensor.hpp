#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>

#include "redlat/measure.hpp"
#include "redlat/reducing.hpp"

namespace redlat {

/// The tensor sum_i x_i (tensor) y_i, realized pointwise as x(s) . y(t).
struct TensorPair {
  VectorFunction x;
  VectorFunction y;

  TensorPair(VectorFunction x_in, VectorFunction y_in);
  int vector_dim() const { return x.vector_dim(); }
};

enum class IterationOrder { kXOuter, kYOuter };

/// Iterated lattice norm: outer quasi-norm of the profile of inner
/// quasi-norms of the slices t -> x(s) . y(t). Related maps are applied to
/// both factors first. Exact on finite atoms.
double iterated_norm(const TensorPair& t, IterationOrder order);

struct InjectiveOptions {
  int restarts = 8;
  int max_iterations = 200;
  bool grid_oracle = false;
  std::uint64_t seed = 0xD0A11BA11ULL;
};

/// Alternating maximization over the dual unit balls (a certified lower
/// bound on the supremum). Needs both exponents >= 1. With grid_oracle set
/// and at most 6 atoms in total, also brute-forces a discretized dual-ball
/// grid and returns the larger value.
double injective_norm(const TensorPair& t, const InjectiveOptions& opts = {});

struct ProjectiveOptions {
  int restarts = 6;
  int iterations = 220;
  double condition_cap = 1e8;
  std::uint64_t seed = 0x9C0FFEEULL;
  ReduceOptions reduce;  // for the canonical start
};

/// Fixed-length projective norm: minimizes sum_i ||(M x)_i|| ||(M^-T y)_i||
/// over invertible M by seeded local descent from the identity and from the
/// canonical reducing-matrix representation. Returns an upper bound on the
/// infimum over this representation family.
double n_projective_norm(const TensorPair& t, const ProjectiveOptions& opts = {});

/// Value of the canonical representation sum_i ||e_i . A^-1 x|| ||e_i . A y||
/// with A the reducing matrix of x (used as a descent start and in tests).
double canonical_representation_value(const TensorPair& t,
                                      const ReducingMatrix& rx);

/// k^(1-1/p) mass^(1/p) y_norm: the length-k bound witnessing the collapse
/// of the unrestricted projective norm for p < 1.
double projective_collapse_bound(double p, int k, double mass, double y_norm);

struct NormComparison {
  double iterated_xy = 0.0;
  double iterated_yx = 0.0;
  std::optional<double> injective;  // present only when both exponents >= 1
  double n_projective = 0.0;
  double reducing_product = 0.0;

  // Pairwise ratios; NaN when undefined (zero tensor or missing injective).
  double r_iter_xy_rp = 0.0;
  double r_iter_yx_rp = 0.0;
  double r_nproj_rp = 0.0;
  double r_inj_rp = 0.0;
  double r_inj_nproj = 0.0;
  double r_iter_xy_yx = 0.0;
};

struct CompareOptions {
  InjectiveOptions injective;
  ProjectiveOptions projective;
  ReduceOptions reduce;
};

NormComparison compare_all(const TensorPair& t, const CompareOptions& opts = {});

}  // namespace redlat
