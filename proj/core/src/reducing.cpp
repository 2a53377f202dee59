#include "redlat/reducing.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "redlat/rng.hpp"
#include "redlat/sampling.hpp"

namespace redlat {

namespace {

constexpr double kKernelThresholdFactor = 1e-9;

Eigen::MatrixXd kernel_from_components(const Eigen::MatrixXd& comps) {
  const int n = static_cast<int>(comps.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(comps, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  if (smax == 0.0) {
    return Eigen::MatrixXd::Identity(n, n);
  }
  const double thresh = kKernelThresholdFactor * smax;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > thresh) ++rank;
  }
  // Left singular vectors past the rank span the nullspace of comps^T e.
  return svd.matrixU().rightCols(n - rank);
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& kernel_basis,
                                      int n) {
  const int k = static_cast<int>(kernel_basis.cols());
  if (k == 0) return Eigen::MatrixXd::Identity(n, n);
  if (k == n) return Eigen::MatrixXd(n, 0);
  // Complement = left singular vectors of the projector residual.
  Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(n, n) - kernel_basis * kernel_basis.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(n - k);
}

// Symmetric PSD square root of M^{-1}/kappa given M's eigendecomposition.
Eigen::MatrixXd shape_from_design(const Eigen::MatrixXd& design_matrix,
                                  double kappa) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(design_matrix);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw std::runtime_error("mvee: design matrix lost positive definiteness");
  }
  Eigen::VectorXd inv_sqrt =
      (ev.array() * kappa).inverse().sqrt().matrix();
  return es.eigenvectors() * inv_sqrt.asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

int default_direction_count(int n) { return std::max(64, 16 * n * n); }

Eigen::MatrixXd kernel_of(const VectorFunction& x) {
  return kernel_from_components(x.components());
}

Eigen::MatrixXd effective_kernel(const VectorFunction& x) {
  return kernel_from_components(effective_components(x));
}

Eigen::MatrixXd mvee(const std::vector<Eigen::VectorXd>& points, double tol) {
  if (points.empty()) throw std::invalid_argument("mvee: empty point set");
  const int k = static_cast<int>(points.front().size());
  const int m = static_cast<int>(points.size());
  Eigen::MatrixXd P(k, m);
  for (int i = 0; i < m; ++i) {
    if (points[i].size() != k) {
      throw std::invalid_argument("mvee: inconsistent point dimensions");
    }
    P.col(i) = points[i];
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(P);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() < k || sv[k - 1] <= 1e-13 * sv[0]) {
      throw std::invalid_argument("mvee: points do not span the space");
    }
  }

  // D-optimal design iteration on M(w) = sum_i w_i p_i p_i^T. The enclosing
  // ellipsoid is {u : u^T M^{-1} u <= kappa} with kappa = max_i g_i.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / m);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < m; ++i) M += w[i] * P.col(i) * P.col(i).transpose();

  Eigen::MatrixXd Minv = M.inverse();
  Eigen::VectorXd g(m);
  auto refresh = [&]() {
    M.setZero();
    for (int i = 0; i < m; ++i) {
      if (w[i] > 0.0) M += w[i] * P.col(i) * P.col(i).transpose();
    }
    Minv = M.inverse();
    for (int i = 0; i < m; ++i) g[i] = P.col(i).dot(Minv * P.col(i));
  };
  refresh();

  const int max_iter = 500000;
  const double kd = static_cast<double>(k);
  for (int iter = 0; iter < max_iter; ++iter) {
    int i_up = 0, i_dn = -1;
    double g_up = -1.0, g_dn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (g[i] > g_up) {
        g_up = g[i];
        i_up = i;
      }
      if (w[i] > 0.0 && g[i] < g_dn) {
        g_dn = g[i];
        i_dn = i;
      }
    }
    const double up_viol = g_up / kd - 1.0;
    const double dn_viol = 1.0 - g_dn / kd;
    if (up_viol <= tol && dn_viol <= tol) break;

    int idx;
    double beta;
    if (up_viol >= dn_viol) {
      idx = i_up;
      beta = (g_up - kd) / (kd * (g_up - 1.0));
    } else {
      idx = i_dn;
      beta = (g_dn - kd) / (kd * (g_dn - 1.0));  // negative: away step
      const double beta_min = -w[idx] / (1.0 - w[idx]);
      if (beta < beta_min) beta = beta_min;  // drop step
    }
    if (std::abs(beta) < 1e-17) break;

    // Rank-one update of M^{-1} and the gradient values.
    const Eigen::VectorXd z = Minv * P.col(idx);
    const double gi = g[idx];
    const double denom = 1.0 - beta + beta * gi;
    const Eigen::VectorXd Pz = P.transpose() * z;
    g = (g - (beta / denom) * Pz.array().square().matrix()) / (1.0 - beta);
    Minv = (Minv - (beta / denom) * z * z.transpose()) / (1.0 - beta);
    w *= (1.0 - beta);
    w[idx] += beta;

    if ((iter + 1) % 1000 == 0) refresh();  // shed rank-one drift
  }
  refresh();

  const double kappa = g.maxCoeff();
  return shape_from_design(M, kappa);
}

ReducingMatrix reduce_directional_norm(
    const std::function<double(const Eigen::VectorXd&)>& norm, int n,
    const Eigen::MatrixXd& kernel_basis, const ReduceOptions& opts) {
  const int count =
      opts.directions > 0 ? opts.directions : default_direction_count(n);
  const int k = n - static_cast<int>(kernel_basis.cols());

  ReducingMatrix out;
  out.kernel_basis = kernel_basis;
  out.n_directions = count;
  out.tol = opts.tol;

  if (k == 0) {
    // The norm vanishes identically; zero matrix with unit constants by
    // convention.
    out.matrix = Eigen::MatrixXd::Zero(n, n);
    out.c_low = out.c_high = 1.0;
    return out;
  }

  const Eigen::MatrixXd V = orthogonal_complement(kernel_basis, n);

  const auto dirs =
      sample_directions(k, count, derive_seed(opts.seed, "reduce/fit"));
  std::vector<Eigen::VectorXd> boundary;
  boundary.reserve(dirs.size());
  for (const auto& d : dirs) {
    const double nu = norm(V * d);
    if (!(nu > 0.0) || !std::isfinite(nu)) {
      throw std::runtime_error(
          "reducing matrix: directional norm vanished on the kernel "
          "complement");
    }
    boundary.push_back(d / nu);
  }

  const Eigen::MatrixXd Q = mvee(boundary, opts.tol);
  out.matrix = V * Q * V.transpose();
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose().eval());

  const auto fresh =
      sample_directions(k, count, derive_seed(opts.seed, "reduce/validate"));
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& d : fresh) {
    const double denom = (Q * d).norm();
    if (denom < 1e-300) continue;
    const double ratio = norm(V * d) / denom;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  out.c_low = lo;
  out.c_high = hi;
  return out;
}

ReducingMatrix reducing_matrix(const VectorFunction& x,
                               const ReduceOptions& opts) {
  const int n = x.vector_dim();
  const Eigen::MatrixXd comps = effective_components(x);
  const Eigen::MatrixXd kernel = kernel_from_components(comps);
  const Eigen::VectorXd& w = x.space().base().weights();
  const double p = x.space().exponent();
  auto norm = [&](const Eigen::VectorXd& e) {
    return weighted_p_norm(comps.transpose() * e, w, p);
  };
  if (static_cast<int>(kernel.cols()) < n && n == 1) {
    // One-dimensional case is exact: matrix (||x_1||).
    ReducingMatrix out;
    out.matrix = Eigen::MatrixXd::Constant(1, 1, norm(Eigen::VectorXd::Ones(1)));
    out.kernel_basis = Eigen::MatrixXd(1, 0);
    out.c_low = out.c_high = 1.0;
    out.n_directions =
        opts.directions > 0 ? opts.directions : default_direction_count(1);
    out.tol = opts.tol;
    return out;
  }
  return reduce_directional_norm(norm, n, kernel, opts);
}

double reducing_product(const ReducingMatrix& a, const ReducingMatrix& b) {
  if (a.matrix.rows() != b.matrix.rows()) {
    throw std::invalid_argument("reducing_product: dimension mismatch");
  }
  const Eigen::MatrixXd prod = a.matrix * b.matrix;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(prod);
  return svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
}

}  // namespace redlat
