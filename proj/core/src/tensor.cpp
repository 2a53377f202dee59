#include "redlat/tensor.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "redlat/rng.hpp"
#include "redlat/sampling.hpp"

namespace redlat {

namespace {

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInfExponent;
  return p / (p - 1.0);
}

// Norming functional of u in weighted L^p, p >= 1: the element g of the dual
// ball with <u, g> = ||u||_p under the pairing sum_s w_s u(s) g(s).
Eigen::VectorXd norming_functional(const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& w, double p) {
  const Eigen::Index S = u.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(S);
  if (std::isinf(p)) {
    Eigen::Index smax = 0;
    u.cwiseAbs().maxCoeff(&smax);
    if (u[smax] == 0.0) return g;
    g[smax] = (u[smax] > 0.0 ? 1.0 : -1.0) / w[smax];
    return g;
  }
  if (p == 1.0) {
    for (Eigen::Index s = 0; s < S; ++s) {
      g[s] = (u[s] > 0.0) ? 1.0 : (u[s] < 0.0 ? -1.0 : 0.0);
    }
    return g;
  }
  const double nrm = weighted_p_norm(u, w, p);
  if (nrm == 0.0) return g;
  for (Eigen::Index s = 0; s < S; ++s) {
    const double a = std::abs(u[s]);
    if (a == 0.0) continue;
    g[s] = (u[s] > 0.0 ? 1.0 : -1.0) * std::pow(a / nrm, p - 1.0);
  }
  return g;
}

struct MappedPair {
  Eigen::MatrixXd xc;  // n x Sx, related map applied
  Eigen::MatrixXd yc;  // n x Sy
  Eigen::VectorXd wx, wy;
  double p, q;
};

MappedPair mapped(const TensorPair& t) {
  MappedPair m;
  m.xc = effective_components(t.x);
  m.yc = effective_components(t.y);
  m.wx = t.x.space().base().weights();
  m.wy = t.y.space().base().weights();
  m.p = t.x.space().exponent();
  m.q = t.y.space().exponent();
  return m;
}

}  // namespace

TensorPair::TensorPair(VectorFunction x_in, VectorFunction y_in)
    : x(std::move(x_in)), y(std::move(y_in)) {
  if (x.vector_dim() != y.vector_dim()) {
    throw std::invalid_argument("tensor pair factors must share the dimension");
  }
}

double iterated_norm(const TensorPair& t, IterationOrder order) {
  const MappedPair m = mapped(t);
  const bool x_outer = order == IterationOrder::kXOuter;
  const Eigen::MatrixXd& outer = x_outer ? m.xc : m.yc;
  const Eigen::MatrixXd& inner = x_outer ? m.yc : m.xc;
  const Eigen::VectorXd& w_out = x_outer ? m.wx : m.wy;
  const Eigen::VectorXd& w_in = x_outer ? m.wy : m.wx;
  const double p_out = x_outer ? m.p : m.q;
  const double p_in = x_outer ? m.q : m.p;

  const Eigen::Index S_out = outer.cols();
  Eigen::VectorXd profile(S_out);
  for (Eigen::Index s = 0; s < S_out; ++s) {
    // Slice t -> x(s) . y(t) without materializing the full S x S table.
    const Eigen::VectorXd slice = inner.transpose() * outer.col(s);
    profile[s] = weighted_p_norm(slice, w_in, p_in);
  }
  return weighted_p_norm(profile, w_out, p_out);
}

double injective_norm(const TensorPair& t, const InjectiveOptions& opts) {
  const MappedPair m = mapped(t);
  if (m.p < 1.0 || m.q < 1.0) {
    throw std::invalid_argument("injective norm needs both exponents >= 1");
  }
  if (m.xc.cwiseAbs().maxCoeff() == 0.0 || m.yc.cwiseAbs().maxCoeff() == 0.0) {
    return 0.0;
  }

  const int n = static_cast<int>(m.xc.rows());

  // One alternating pass: given coefficients b on the y side, the optimal
  // x-side functional norms x . b, and symmetrically.
  auto run = [&](Eigen::VectorXd b, int iters) {
    double value = 0.0;
    for (int it = 0; it < iters; ++it) {
      const Eigen::VectorXd u = m.xc.transpose() * b;
      const double nu = weighted_p_norm(u, m.wx, m.p);
      const Eigen::VectorXd xstar = norming_functional(u, m.wx, m.p);
      const Eigen::VectorXd a = m.xc * m.wx.cwiseProduct(xstar);

      const Eigen::VectorXd v = m.yc.transpose() * a;
      const double nv = weighted_p_norm(v, m.wy, m.q);
      const Eigen::VectorXd ystar = norming_functional(v, m.wy, m.q);
      b = m.yc * m.wy.cwiseProduct(ystar);

      const double next = std::max(nu, nv);
      if (next <= value * (1.0 + 1e-13) && it > 2) {
        value = std::max(value, next);
        break;
      }
      value = std::max(value, next);
    }
    return value;
  };

  double best = 0.0;
  Rng rng(derive_seed(opts.seed, "injective"));
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    // Feasible start: b_i = <y_i, y*> for a norming functional y* of y . c.
    Eigen::VectorXd c(n);
    if (r == 0) {
      c.setOnes();
    } else {
      for (int i = 0; i < n; ++i) c[i] = rng.gaussian();
    }
    if (c.norm() == 0.0) c.setOnes();
    const Eigen::VectorXd v0 = m.yc.transpose() * c;
    const Eigen::VectorXd ystar0 = norming_functional(v0, m.wy, m.q);
    Eigen::VectorXd b = m.yc * m.wy.cwiseProduct(ystar0);
    if (b.cwiseAbs().maxCoeff() == 0.0) continue;
    best = std::max(best, run(b, opts.max_iterations));
  }

  const Eigen::Index atoms_total = m.xc.cols() + m.yc.cols();
  if (opts.grid_oracle && atoms_total <= 6) {
    const double qx = conjugate_exponent(m.p);
    const double qy = conjugate_exponent(m.q);
    auto sweep = [&](const Eigen::MatrixXd& side, const Eigen::VectorXd& w_side,
                     double dual_p, const Eigen::MatrixXd& other,
                     const Eigen::VectorXd& w_other, double other_p,
                     std::uint64_t seed) {
      const int S = static_cast<int>(side.cols());
      const int count = 4096 * S;
      const auto grid = sphere_grid(S, count, seed);
      double val = 0.0;
      for (const auto& dir : grid) {
        const double dn = weighted_p_norm(dir, w_side, dual_p);
        if (dn == 0.0) continue;
        const Eigen::VectorXd functional = dir / dn;
        const Eigen::VectorXd a = side * w_side.cwiseProduct(functional);
        const Eigen::VectorXd slice = other.transpose() * a;
        val = std::max(val, weighted_p_norm(slice, w_other, other_p));
      }
      return val;
    };
    best = std::max(best, sweep(m.xc, m.wx, qx, m.yc, m.wy, m.q,
                                derive_seed(opts.seed, "grid/x")));
    best = std::max(best, sweep(m.yc, m.wy, qy, m.xc, m.wx, m.p,
                                derive_seed(opts.seed, "grid/y")));
  }
  return best;
}

namespace {

double representation_value(const TensorPair& t, const Eigen::MatrixXd& M,
                            const Eigen::MatrixXd& Minv_t) {
  const Eigen::MatrixXd zx = M * t.x.components();
  const Eigen::MatrixXd zy = Minv_t * t.y.components();
  double total = 0.0;
  for (int i = 0; i < t.vector_dim(); ++i) {
    total += quasi_norm(t.x.space(), zx.row(i).transpose()) *
             quasi_norm(t.y.space(), zy.row(i).transpose());
  }
  return total;
}

// Condition number and inverse transpose; empty optional past the cap.
std::optional<Eigen::MatrixXd> inverse_transpose(const Eigen::MatrixXd& M,
                                                 double condition_cap) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= 0.0 ||
      sv[0] / sv[sv.size() - 1] > condition_cap) {
    return std::nullopt;
  }
  Eigen::MatrixXd inv = svd.matrixV() * sv.cwiseInverse().asDiagonal() *
                        svd.matrixU().transpose();
  return inv.transpose();
}

}  // namespace

double canonical_representation_value(const TensorPair& t,
                                      const ReducingMatrix& rx) {
  const int n = t.vector_dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rx.matrix);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd pinv = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd proj = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (ev[i] > 1e-12 * emax) {
      pinv[i] = 1.0 / ev[i];
      proj[i] = 1.0;
    }
  }
  const Eigen::MatrixXd Aplus =
      es.eigenvectors() * pinv.asDiagonal() * es.eigenvectors().transpose();
  const Eigen::MatrixXd zx = Aplus * t.x.components();
  const Eigen::MatrixXd zy = rx.matrix * t.y.components();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += quasi_norm(t.x.space(), zx.row(i).transpose()) *
             quasi_norm(t.y.space(), zy.row(i).transpose());
  }
  return total;
}

double n_projective_norm(const TensorPair& t, const ProjectiveOptions& opts) {
  const int n = t.vector_dim();
  if (t.x.components().cwiseAbs().maxCoeff() == 0.0 ||
      t.y.components().cwiseAbs().maxCoeff() == 0.0) {
    return 0.0;
  }
  if (n == 1) {
    // No freedom beyond scalars; the product is invariant.
    return quasi_norm(t.x.space(), t.x.components().row(0).transpose()) *
           quasi_norm(t.y.space(), t.y.components().row(0).transpose());
  }

  auto value_of = [&](const Eigen::MatrixXd& M) -> std::optional<double> {
    const auto inv_t = inverse_transpose(M, opts.condition_cap);
    if (!inv_t) return std::nullopt;
    return representation_value(t, M, *inv_t);
  };

  std::vector<Eigen::MatrixXd> starts;
  starts.push_back(Eigen::MatrixXd::Identity(n, n));
  {
    // Canonical start from the reducing matrix of x (kernel part kept as
    // identity so the start stays invertible).
    ReduceOptions ropts = opts.reduce;
    const ReducingMatrix rx = reducing_matrix(t.x, ropts);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rx.matrix);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double emax = std::max(ev.cwiseAbs().maxCoeff(), 1e-30);
    Eigen::VectorXd inv(n);
    for (int i = 0; i < n; ++i) {
      inv[i] = ev[i] > 1e-12 * emax ? 1.0 / ev[i] : 1.0;
    }
    starts.push_back(es.eigenvectors() * inv.asDiagonal() *
                     es.eigenvectors().transpose());
  }

  Rng rng(derive_seed(opts.seed, "n_projective"));
  double best = std::numeric_limits<double>::infinity();
  const int total_restarts = std::max<int>(opts.restarts, 2);
  for (int r = 0; r < total_restarts; ++r) {
    Eigen::MatrixXd M;
    if (r < static_cast<int>(starts.size())) {
      M = starts[r];
    } else {
      M = Eigen::MatrixXd::Identity(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) += 0.5 * rng.gaussian();
    }
    auto cur = value_of(M);
    if (!cur) continue;

    double step = 0.35;
    int stall = 0;
    for (int it = 0; it < opts.iterations; ++it) {
      Eigen::MatrixXd cand = M;
      const double scale = step * std::max(M.norm() / n, 1e-8);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cand(i, j) += scale * rng.gaussian();
      const auto v = value_of(cand);
      if (v && *v < *cur) {
        M = cand;
        cur = v;
        step = std::min(step * 1.25, 1.0);
        stall = 0;
      } else if (++stall >= 4) {
        step *= 0.6;
        stall = 0;
        if (step < 1e-6) break;
      }
    }
    best = std::min(best, *cur);
  }
  return best;
}

double projective_collapse_bound(double p, int k, double mass, double y_norm) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("collapse bound needs p in (0,1)");
  }
  if (k < 1) throw std::invalid_argument("split count must be at least 1");
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  if (y_norm < 0.0) throw std::invalid_argument("norm must be nonnegative");
  return std::pow(static_cast<double>(k), 1.0 - 1.0 / p) *
         std::pow(mass, 1.0 / p) * y_norm;
}

NormComparison compare_all(const TensorPair& t, const CompareOptions& opts) {
  NormComparison out;
  out.iterated_xy = iterated_norm(t, IterationOrder::kXOuter);
  out.iterated_yx = iterated_norm(t, IterationOrder::kYOuter);
  out.n_projective = n_projective_norm(t, opts.projective);

  const ReducingMatrix rx = reducing_matrix(t.x, opts.reduce);
  const ReducingMatrix ry = reducing_matrix(t.y, opts.reduce);
  out.reducing_product = reducing_product(rx, ry);

  if (t.x.space().exponent() >= 1.0 && t.y.space().exponent() >= 1.0) {
    out.injective = injective_norm(t, opts.injective);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto ratio = [&](double num, double den) {
    return den > 0.0 ? num / den : nan;
  };
  out.r_iter_xy_rp = ratio(out.iterated_xy, out.reducing_product);
  out.r_iter_yx_rp = ratio(out.iterated_yx, out.reducing_product);
  out.r_nproj_rp = ratio(out.n_projective, out.reducing_product);
  out.r_inj_rp = out.injective ? ratio(*out.injective, out.reducing_product) : nan;
  out.r_inj_nproj =
      out.injective ? ratio(*out.injective, out.n_projective) : nan;
  out.r_iter_xy_yx = ratio(out.iterated_xy, out.iterated_yx);
  return out;
}

}  // namespace redlat
