#pragma once

#include <Eigen/Dense>

#include "redlat/measure.hpp"
#include "redlat/rng.hpp"

namespace redlat::testing {

inline VectorFunction make_vf(double p, const Eigen::VectorXd& weights,
                              const Eigen::MatrixXd& comps) {
  return VectorFunction(lp_space(p, weights), comps);
}

inline Eigen::VectorXd random_vector(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
  return v;
}

inline Eigen::MatrixXd random_components(Rng& rng, int n, int s) {
  Eigen::MatrixXd m(n, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < s; ++j) m(i, j) = rng.gaussian();
  return m;
}

// Exact symmetric PSD square root of the weighted Gram matrix of x: the
// closed-form reducing matrix for exponent 2, since ||x . e||^2 = e^T G e.
inline Eigen::MatrixXd gram_root(const Eigen::MatrixXd& comps,
                                 const Eigen::VectorXd& weights) {
  const Eigen::MatrixXd gram =
      comps * weights.asDiagonal() * comps.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  Eigen::VectorXd sqrt_ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * sqrt_ev.asDiagonal() *
         es.eigenvectors().transpose();
}

inline double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
}

}  // namespace redlat::testing
