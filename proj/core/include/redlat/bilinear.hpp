#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "redlat/measure.hpp"
#include "redlat/reducing.hpp"

namespace redlat {

/// Bilinear operator R^m x R^n -> Z given by the m x n array of images of
/// basis pairs; tau(x, y) = sum_ij x_i tau_ij y_j.
class BilinearTable {
 public:
  BilinearTable(SpaceDescriptor target, int m, int n,
                std::vector<Eigen::VectorXd> entries);

  const SpaceDescriptor& target() const { return target_; }
  int rows() const { return m_; }
  int cols() const { return n_; }
  const Eigen::VectorXd& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * n_ + j];
  }
  const std::vector<Eigen::VectorXd>& entries() const { return entries_; }

  double max_entry_abs() const;

 private:
  SpaceDescriptor target_;
  int m_, n_;
  std::vector<Eigen::VectorXd> entries_;  // row-major m*n, each of Z dimension
};

Eigen::VectorXd apply(const BilinearTable& table, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& y);

/// ||tau(x,y)||_Z <= |A0 x||B0 y| + |A1 x||B1 y|.
struct TwoTermBound {
  Eigen::MatrixXd a0, a1;  // act on R^m
  Eigen::MatrixXd b0, b1;  // act on R^n
};

struct SplitResult {
  BilinearTable tau0;
  BilinearTable tau1;
  double c0 = 0.0;  // measured sup ||tau0(x,y)|| / (|A0 x||B0 y|)
  double c1 = 0.0;
  double reconstruction_error = 0.0;  // max-norm, relative to the table scale
  std::vector<double> eps_trace;      // regularization levels actually used
};

struct SplitOptions {
  int eps_levels = 20;       // schedule 2^-1 .. 2^-eps_levels
  double delta_conv = 1e-7;  // Cauchy acceptance threshold, max norm
  double bound_slack = 1e-9;  // relative slack when checking the hypothesis
  int validation_pairs = 10000;  // random pairs when m or n > 3
  std::uint64_t seed = 0xB111EA4ULL;
};

class BoundViolation : public std::runtime_error {
 public:
  explicit BoundViolation(const std::string& what)
      : std::runtime_error(what) {}
};

class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> eps,
                     std::vector<double> deltas)
      : std::runtime_error(what),
        eps_trace(std::move(eps)),
        delta_trace(std::move(deltas)) {}
  std::vector<double> eps_trace;
  std::vector<double> delta_trace;
};

/// Case-1 split in the standard frames: tau0_ij = tau_ij / (1 + a_i b_j),
/// tau1_ij = a_i b_j tau_ij / (1 + a_i b_j).
SplitResult split_canonical(const BilinearTable& table,
                            const Eigen::VectorXd& alpha,
                            const Eigen::VectorXd& beta,
                            const SplitOptions& opts = {});

/// Full splitting of a two-term-bounded operator: reduces general A1/B1 to
/// positive semi-definite form by SVD, changes variables through invertible
/// A0/B0, and walks a decreasing regularization schedule when they are
/// singular. Throws BoundViolation if the hypothesis fails on a validation
/// pair and ConvergenceFailure (with the trace) when the schedule runs out.
SplitResult split_two_term(const BilinearTable& table, const TwoTermBound& bound,
                           const SplitOptions& opts = {});

struct BootstrapRecord {
  double lhs_norm = 0.0;       // ||tau(f, g)||_Z
  double rhs_bound = 0.0;      // tau_norm * |[f]_X [g]_Y|
  double realized_constant = 0.0;
  double representation_gap = 0.0;  // direct vs canonical-route evaluation
  ReducingMatrix rf, rg;
};

struct BootstrapOptions {
  int validation_pairs = 2000;
  double bound_slack = 1e-9;
  ReduceOptions reduce;
  SplitOptions split;
  std::uint64_t seed = 0xB00757A9ULL;
  /// When the scalar bound only holds up to a constant, measure it on the
  /// validation set and fold it into the bound instead of erroring.
  bool rescale_bound = false;
};

/// Single-term bootstrap: checks ||tau(u,v)|| <= tau_norm ||u||_X ||v||_Y on
/// seeded validation pairs, then evaluates the vector extension through the
/// canonical reducing-matrix representation.
BootstrapRecord bootstrap_single(const BilinearTable& table,
                                 const VectorFunction& f,
                                 const VectorFunction& g, double tau_norm,
                                 const BootstrapOptions& opts = {});

struct TwoTermBootstrapRecord {
  double lhs_norm = 0.0;  // ||tau(f, g)||_Z
  double rhs_sum = 0.0;   // sum_k |[f]_Xk [g]_Yk|
  double ratio = 0.0;     // lhs / rhs (0 when both vanish)
  bool applicable = true; // false when rhs == 0 == lhs
  std::array<double, 2> reducing_products{0.0, 0.0};
  double bound_scale = 1.0;  // measured scalar constant when rescaling
  double identity_consistency = 0.0;  // || sum_k sigma_k(id,id) - tau(f,g) ||
  std::optional<SplitResult> split;
};

/// Two-term bootstrap: forms sigma(a, b) = tau(a . f, b . g), dominates it by
/// reducing matrices of f in X0/X1 and g in Y0/Y1, splits, and evaluates at
/// the identity pair.
TwoTermBootstrapRecord bootstrap_two_term(
    const BilinearTable& table, const SpaceDescriptor& x0,
    const SpaceDescriptor& x1, const SpaceDescriptor& y0,
    const SpaceDescriptor& y1, const Eigen::MatrixXd& f_components,
    const Eigen::MatrixXd& g_components, const BootstrapOptions& opts = {});

struct IdentityCheckRecord {
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double band = 0.0;  // product of the two measured c_high/c_low bands
  ReducingMatrix direct;
  ReducingMatrix induced;
};

/// Compares the reducing matrix of x with the reducing matrix of the induced
/// norm u -> ||x . u|| evaluated at the identity tensor (fresh sample seed);
/// the spectral ratios must stay within the measured bands.
IdentityCheckRecord reducing_matrix_identity_check(const VectorFunction& x,
                                                   const ReduceOptions& opts = {});

}  // namespace redlat
