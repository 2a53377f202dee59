#pragma once

#include <Eigen/Core>

#include <cstdint>

#include "redlat/measure.hpp"

namespace redlat {

/// Uniform grid on the 2-pi-periodic torus, d = 1 or 2, N points per axis
/// (power of two, at least 8). Quadrature weights (2 pi / N)^d make the
/// associated measure space exact for band-limited integrands.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, int points_per_axis);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  int size() const { return size_; }
  double quadrature_weight() const;

  DiscreteMeasureSpace measure_space() const;
  SpaceDescriptor lp(double exponent) const;

  /// Coordinates of grid point `idx` (row-major over axes), in [0, 2 pi)^d.
  Eigen::VectorXd position(int idx) const;

 private:
  int dim_;
  int n_;
  int size_;
};

enum class MultiplierKind { kHomogeneous, kInhomogeneous };

/// Fractional derivative of order s as a Fourier multiplier: |xi|^s for the
/// homogeneous kind (zero frequency mapped to zero) and (1 + |xi|^2)^(s/2)
/// for the inhomogeneous kind.
struct FractionalOperator {
  MultiplierKind kind = MultiplierKind::kInhomogeneous;
  double order = 0.0;
};

Eigen::VectorXd apply_fractional(const FractionalOperator& op,
                                 const PeriodicGrid& grid,
                                 const Eigen::VectorXd& f);

/// Dense matrix of the multiplier operator on the grid (columns = images of
/// the atom indicators). Intended for d = 1 at moderate N, where it feeds the
/// related-map machinery.
Eigen::MatrixXd fractional_matrix(const FractionalOperator& op,
                                  const PeriodicGrid& grid);

/// n random real trigonometric polynomials with Gaussian coefficients on
/// |xi| <= cutoff, each normalized to unit grid L^2 norm.
VectorFunction random_band_limited(const PeriodicGrid& grid, int cutoff, int n,
                                   std::uint64_t seed);

struct KatoPonceExponents {
  double p0, q0, p1, q1, r;
};

struct KatoPonceRecord {
  double lhs = 0.0;         // ||D^s(f . g)||_r
  double rhs_vec = 0.0;     // sum of iterated norms
  double rhs_scalar = 0.0;  // sum of products of length norms
  std::array<double, 2> vec_terms{0.0, 0.0};
  std::array<double, 2> scalar_terms{0.0, 0.0};
  double ratio_vec = 0.0;     // lhs / rhs_vec
  double ratio_scalar = 0.0;  // lhs / rhs_scalar
  double reduction = 0.0;     // rhs_vec / rhs_scalar
  bool applicable = true;     // false when every quantity vanishes
};

/// Both sides of the vector-valued fractional Leibniz estimate with
/// (A0, B0, A1, B1) = (D^s, I, I, D^s). Exponents must satisfy
/// 1/r = 1/p_k + 1/q_k, p_k, q_k in (1, inf], r > 1/2, and s must lie in the
/// admissible range (s > d(1/r - 1)_+ or s an even integer).
KatoPonceRecord kato_ponce_sides(const PeriodicGrid& grid, MultiplierKind kind,
                                 double s, const KatoPonceExponents& exps,
                                 const Eigen::MatrixXd& f_components,
                                 const Eigen::MatrixXd& g_components);

}  // namespace redlat
