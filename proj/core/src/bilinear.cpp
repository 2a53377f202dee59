#include "redlat/bilinear.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>

#include "redlat/rng.hpp"
#include "redlat/sampling.hpp"

namespace redlat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using PairList = std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>;

int grid_size_for(int dim) {
  if (dim == 1) return 2;
  if (dim == 2) return 32;
  return 72;
}

PairList validation_pairs(int m, int n, const SplitOptions& opts) {
  PairList pairs;
  if (m <= 3 && n <= 3) {
    const auto gx = sphere_grid(m, grid_size_for(m),
                                derive_seed(opts.seed, "val/x"));
    const auto gy = sphere_grid(n, grid_size_for(n),
                                derive_seed(opts.seed, "val/y"));
    pairs.reserve(gx.size() * gy.size());
    for (const auto& x : gx)
      for (const auto& y : gy) pairs.emplace_back(x, y);
    return pairs;
  }
  Rng rng(derive_seed(opts.seed, "val/random"));
  pairs.reserve(opts.validation_pairs);
  for (int t = 0; t < opts.validation_pairs; ++t) {
    Eigen::VectorXd x(m), y(n);
    for (int i = 0; i < m; ++i) x[i] = rng.gaussian();
    for (int j = 0; j < n; ++j) y[j] = rng.gaussian();
    if (x.norm() == 0.0 || y.norm() == 0.0) continue;
    pairs.emplace_back(x.normalized(), y.normalized());
  }
  return pairs;
}

// Evaluations of tau(x, .) reused across the y sweep.
std::vector<Eigen::VectorXd> partials(const BilinearTable& t,
                                      const Eigen::VectorXd& x) {
  std::vector<Eigen::VectorXd> out(t.cols());
  for (int j = 0; j < t.cols(); ++j) {
    Eigen::VectorXd acc = x[0] * t.entry(0, j);
    for (int i = 1; i < t.rows(); ++i) acc += x[i] * t.entry(i, j);
    out[j] = std::move(acc);
  }
  return out;
}

Eigen::VectorXd combine(const std::vector<Eigen::VectorXd>& parts,
                        const Eigen::VectorXd& y) {
  Eigen::VectorXd acc = y[0] * parts[0];
  for (int j = 1; j < static_cast<int>(parts.size()); ++j)
    acc += y[j] * parts[j];
  return acc;
}

// Measured sup of ||tau(x,y)||_Z / (|A x||B y|) over the pairs; near-0/0
// pairs are skipped, a significant numerator over a vanishing denominator
// reports infinity.
double measure_constant(const BilinearTable& t, const Eigen::MatrixXd& A,
                        const Eigen::MatrixXd& B, const PairList& pairs) {
  const double scale_a = A.cwiseAbs().maxCoeff();
  const double scale_b = B.cwiseAbs().maxCoeff();
  const double scale_t = std::max(t.max_entry_abs(), 1e-300);
  double c = 0.0;
  for (const auto& [x, y] : pairs) {
    const auto parts = partials(t, x);
    const Eigen::VectorXd z = combine(parts, y);
    const double num = quasi_norm(t.target(), z);
    const double den = (A * x).norm() * (B * y).norm();
    if (den <= 1e-13 * std::max(scale_a * scale_b, 1e-300)) {
      if (num > 1e-10 * scale_t) return kInf;
      continue;
    }
    c = std::max(c, num / den);
  }
  return c;
}

void check_two_term_bound(const BilinearTable& t, const TwoTermBound& bound,
                          const PairList& pairs, double slack) {
  for (const auto& [x, y] : pairs) {
    const double lhs = quasi_norm(t.target(), apply(t, x, y));
    const double rhs = (bound.a0 * x).norm() * (bound.b0 * y).norm() +
                       (bound.a1 * x).norm() * (bound.b1 * y).norm();
    if (lhs > rhs * (1.0 + slack) + 1e-14 * t.max_entry_abs()) {
      std::ostringstream msg;
      msg << "two-term bound violated on a validation pair: " << lhs << " > "
          << rhs;
      throw BoundViolation(msg.str());
    }
  }
}

struct TablePair {
  std::vector<Eigen::VectorXd> tau0, tau1;
};

// Core construction for invertible A0, B0: change variables, symmetrize the
// secondary matrices by SVD, apply the canonical division in their
// eigenframes, then pull everything back to the standard bases.
TablePair split_invertible_tables(const BilinearTable& t,
                                  const Eigen::MatrixXd& A0,
                                  const Eigen::MatrixXd& A1,
                                  const Eigen::MatrixXd& B0,
                                  const Eigen::MatrixXd& B1) {
  const int m = t.rows();
  const int n = t.cols();
  const Eigen::MatrixXd A0inv = A0.inverse();
  const Eigen::MatrixXd B0inv = B0.inverse();

  // |A1 A0^-1 u| = |S V^T u|: the positive semi-definite replacement shares
  // the right singular frame V and the singular values.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_a(
      A1 * A0inv, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_b(
      B1 * B0inv, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd& V = svd_a.matrixV();
  const Eigen::MatrixXd& W = svd_b.matrixV();
  const Eigen::VectorXd& alpha = svd_a.singularValues();
  const Eigen::VectorXd& beta = svd_b.singularValues();

  // Entries of the transformed operator in the eigenframes.
  std::vector<Eigen::VectorXd> hat0(static_cast<std::size_t>(m) * n);
  std::vector<Eigen::VectorXd> hat1(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd xarg = A0inv * V.col(i);
    const auto parts = partials(t, xarg);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd yarg = B0inv * W.col(j);
      const Eigen::VectorXd hat = combine(parts, yarg);
      const double f = 1.0 / (1.0 + alpha[i] * beta[j]);
      hat0[static_cast<std::size_t>(i) * n + j] = f * hat;
      hat1[static_cast<std::size_t>(i) * n + j] =
          (alpha[i] * beta[j] * f) * hat;
    }
  }

  // tau_k(e_s, e_t) = sum_ij <A0 e_s, v_i> hat_k(i,j) <B0 e_t, w_j>.
  const Eigen::MatrixXd CA = V.transpose() * A0;  // (i, s)
  const Eigen::MatrixXd CB = W.transpose() * B0;  // (j, t)
  const Eigen::Index zdim = t.entry(0, 0).size();
  TablePair out;
  out.tau0.assign(static_cast<std::size_t>(m) * n, Eigen::VectorXd::Zero(zdim));
  out.tau1.assign(static_cast<std::size_t>(m) * n, Eigen::VectorXd::Zero(zdim));
  for (int s = 0; s < m; ++s) {
    for (int tt = 0; tt < n; ++tt) {
      Eigen::VectorXd acc0 = Eigen::VectorXd::Zero(zdim);
      Eigen::VectorXd acc1 = Eigen::VectorXd::Zero(zdim);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
          const double coeff = CA(i, s) * CB(j, tt);
          acc0 += coeff * hat0[static_cast<std::size_t>(i) * n + j];
          acc1 += coeff * hat1[static_cast<std::size_t>(i) * n + j];
        }
      }
      out.tau0[static_cast<std::size_t>(s) * n + tt] = std::move(acc0);
      out.tau1[static_cast<std::size_t>(s) * n + tt] = std::move(acc1);
    }
  }
  return out;
}

double table_max_diff(const TablePair& a, const TablePair& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.tau0.size(); ++i) {
    d = std::max(d, (a.tau0[i] - b.tau0[i]).cwiseAbs().maxCoeff());
    d = std::max(d, (a.tau1[i] - b.tau1[i]).cwiseAbs().maxCoeff());
  }
  return d;
}

double reconstruction_error(const BilinearTable& t, const TablePair& tp) {
  const double scale = std::max(t.max_entry_abs(), 1.0);
  double err = 0.0;
  for (int i = 0; i < t.rows(); ++i) {
    for (int j = 0; j < t.cols(); ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * t.cols() + j;
      err = std::max(err, (tp.tau0[idx] + tp.tau1[idx] - t.entry(i, j))
                              .cwiseAbs()
                              .maxCoeff());
    }
  }
  return err / scale;
}

bool is_invertible(const Eigen::MatrixXd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const Eigen::VectorXd& sv = svd.singularValues();
  return sv[sv.size() - 1] > 1e-12 * std::max(sv[0], 1e-300);
}

Eigen::MatrixXd regularized(const Eigen::MatrixXd& M, double eps) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  sv.array() += eps;
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

SplitResult finish_split(const BilinearTable& t, TablePair tp,
                         const TwoTermBound& bound, const PairList& pairs,
                         std::vector<double> eps_trace) {
  BilinearTable tau0(t.target(), t.rows(), t.cols(), std::move(tp.tau0));
  BilinearTable tau1(t.target(), t.rows(), t.cols(), std::move(tp.tau1));
  TablePair view{tau0.entries(), tau1.entries()};
  const double rec = reconstruction_error(t, view);
  const double c0 = measure_constant(tau0, bound.a0, bound.b0, pairs);
  const double c1 = measure_constant(tau1, bound.a1, bound.b1, pairs);
  return SplitResult{std::move(tau0), std::move(tau1), c0, c1, rec,
                     std::move(eps_trace)};
}

}  // namespace

BilinearTable::BilinearTable(SpaceDescriptor target, int m, int n,
                             std::vector<Eigen::VectorXd> entries)
    : target_(std::move(target)), m_(m), n_(n), entries_(std::move(entries)) {
  if (m_ < 1 || n_ < 1) {
    throw std::invalid_argument("bilinear table needs positive dimensions");
  }
  if (entries_.size() != static_cast<std::size_t>(m_) * n_) {
    throw std::invalid_argument("bilinear table entry count mismatch");
  }
  for (const auto& e : entries_) {
    if (e.size() != target_.dimension()) {
      throw std::invalid_argument(
          "bilinear table entries must live on the target space atoms");
    }
  }
}

double BilinearTable::max_entry_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) {
    if (e.size() > 0) m = std::max(m, e.cwiseAbs().maxCoeff());
  }
  return m;
}

Eigen::VectorXd apply(const BilinearTable& table, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& y) {
  if (x.size() != table.rows() || y.size() != table.cols()) {
    throw std::invalid_argument("apply: shape mismatch");
  }
  return combine(partials(table, x), y);
}

SplitResult split_canonical(const BilinearTable& table,
                            const Eigen::VectorXd& alpha,
                            const Eigen::VectorXd& beta,
                            const SplitOptions& opts) {
  if (alpha.size() != table.rows() || beta.size() != table.cols()) {
    throw std::invalid_argument("split_canonical: size mismatch");
  }
  if (alpha.minCoeff() < 0.0 || beta.minCoeff() < 0.0) {
    throw std::invalid_argument("split_canonical: negative scale factors");
  }
  const int m = table.rows();
  const int n = table.cols();
  TablePair tp;
  tp.tau0.reserve(static_cast<std::size_t>(m) * n);
  tp.tau1.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double f = 1.0 / (1.0 + alpha[i] * beta[j]);
      tp.tau0.push_back(f * table.entry(i, j));
      tp.tau1.push_back((alpha[i] * beta[j] * f) * table.entry(i, j));
    }
  }
  TwoTermBound bound{Eigen::MatrixXd::Identity(m, m),
                     Eigen::MatrixXd(alpha.asDiagonal()),
                     Eigen::MatrixXd::Identity(n, n),
                     Eigen::MatrixXd(beta.asDiagonal())};
  return finish_split(table, std::move(tp), bound,
                      validation_pairs(m, n, opts), {});
}

SplitResult split_two_term(const BilinearTable& table,
                           const TwoTermBound& bound,
                           const SplitOptions& opts) {
  const int m = table.rows();
  const int n = table.cols();
  if (bound.a0.cols() != m || bound.a1.cols() != m || bound.b0.cols() != n ||
      bound.b1.cols() != n) {
    throw std::invalid_argument("split_two_term: bound shape mismatch");
  }
  const PairList pairs = validation_pairs(m, n, opts);
  check_two_term_bound(table, bound, pairs, opts.bound_slack);

  if (is_invertible(bound.a0) && is_invertible(bound.b0)) {
    TablePair tp =
        split_invertible_tables(table, bound.a0, bound.a1, bound.b0, bound.b1);
    return finish_split(table, std::move(tp), bound, pairs, {});
  }

  // Singular primary matrices: walk the decreasing regularization schedule
  // and accept once consecutive splits are Cauchy in max norm.
  std::vector<double> eps_trace;
  std::vector<double> deltas;
  std::optional<TablePair> prev;
  for (int level = 1; level <= opts.eps_levels; ++level) {
    const double eps = std::ldexp(1.0, -level);
    eps_trace.push_back(eps);
    TablePair tp = split_invertible_tables(table, regularized(bound.a0, eps),
                                           bound.a1, regularized(bound.b0, eps),
                                           bound.b1);
    if (prev) {
      const double d = table_max_diff(tp, *prev);
      deltas.push_back(d);
      if (d < opts.delta_conv) {
        return finish_split(table, std::move(tp), bound, pairs,
                            std::move(eps_trace));
      }
    }
    prev = std::move(tp);
  }
  std::ostringstream msg;
  msg << "regularization path did not converge within the schedule; "
      << "last deltas:";
  for (std::size_t i = deltas.size() >= 3 ? deltas.size() - 3 : 0;
       i < deltas.size(); ++i) {
    msg << ' ' << deltas[i];
  }
  throw ConvergenceFailure(msg.str(), std::move(eps_trace), std::move(deltas));
}

namespace {

Eigen::MatrixXd pseudo_inverse_psd(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double emax = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > 1e-12 * emax) inv[i] = 1.0 / ev[i];
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

BootstrapRecord bootstrap_single(const BilinearTable& table,
                                 const VectorFunction& f,
                                 const VectorFunction& g, double tau_norm,
                                 const BootstrapOptions& opts) {
  const int m = table.rows();
  const int n = table.cols();
  if (f.space().dimension() != m || g.space().dimension() != n) {
    throw std::invalid_argument("bootstrap_single: dimension mismatch");
  }
  if (f.vector_dim() != g.vector_dim()) {
    throw std::invalid_argument("bootstrap_single: vector dims differ");
  }

  // Scalar bound check on seeded unit pairs.
  Rng rng(derive_seed(opts.seed, "bootstrap1/pairs"));
  const double scale_t = std::max(table.max_entry_abs(), 1e-300);
  for (int trial = 0; trial < opts.validation_pairs; ++trial) {
    Eigen::VectorXd u(m), v(n);
    for (int i = 0; i < m; ++i) u[i] = rng.gaussian();
    for (int j = 0; j < n; ++j) v[j] = rng.gaussian();
    const double lhs = quasi_norm(table.target(), apply(table, u, v));
    const double rhs =
        tau_norm * quasi_norm(f.space(), u) * quasi_norm(g.space(), v);
    if (lhs > rhs * (1.0 + opts.bound_slack) + 1e-14 * scale_t) {
      std::ostringstream msg;
      msg << "scalar bound violated: " << lhs << " > " << rhs;
      throw BoundViolation(msg.str());
    }
  }

  BootstrapRecord rec;
  rec.rf = reducing_matrix(f, opts.reduce);
  rec.rg = reducing_matrix(g, opts.reduce);

  const int nu = f.vector_dim();
  Eigen::VectorXd direct = Eigen::VectorXd::Zero(table.target().dimension());
  for (int i = 0; i < nu; ++i) {
    direct += apply(table, f.components().row(i).transpose(),
                    g.components().row(i).transpose());
  }
  rec.lhs_norm = quasi_norm(table.target(), direct);

  // Canonical route: [f]^-1 f paired against [f] g.
  const Eigen::MatrixXd Aplus = pseudo_inverse_psd(rec.rf.matrix);
  const Eigen::MatrixXd fc = Aplus * f.components();
  const Eigen::MatrixXd gc = rec.rf.matrix * g.components();
  Eigen::VectorXd canonical = Eigen::VectorXd::Zero(table.target().dimension());
  for (int i = 0; i < nu; ++i) {
    canonical +=
        apply(table, fc.row(i).transpose(), gc.row(i).transpose());
  }
  rec.representation_gap = (direct - canonical).cwiseAbs().maxCoeff();

  const double rp = reducing_product(rec.rf, rec.rg);
  rec.rhs_bound = tau_norm * rp;
  rec.realized_constant = rec.rhs_bound > 0.0
                              ? rec.lhs_norm / rec.rhs_bound
                              : (rec.lhs_norm == 0.0 ? 0.0 : kInf);
  return rec;
}

TwoTermBootstrapRecord bootstrap_two_term(
    const BilinearTable& table, const SpaceDescriptor& x0,
    const SpaceDescriptor& x1, const SpaceDescriptor& y0,
    const SpaceDescriptor& y1, const Eigen::MatrixXd& f_components,
    const Eigen::MatrixXd& g_components, const BootstrapOptions& opts) {
  const int m = table.rows();
  const int n = table.cols();
  const int nu = static_cast<int>(f_components.rows());
  if (g_components.rows() != nu) {
    throw std::invalid_argument("bootstrap_two_term: vector dims differ");
  }
  const VectorFunction f0(x0, f_components), f1(x1, f_components);
  const VectorFunction g0(y0, g_components), g1(y1, g_components);
  if (x0.dimension() != m || x1.dimension() != m || y0.dimension() != n ||
      y1.dimension() != n) {
    throw std::invalid_argument("bootstrap_two_term: space dimension mismatch");
  }

  // The induced form on coefficient pairs.
  std::vector<Eigen::VectorXd> sigma_entries;
  sigma_entries.reserve(static_cast<std::size_t>(nu) * nu);
  for (int i = 0; i < nu; ++i) {
    const auto parts = partials(table, f_components.row(i).transpose());
    for (int j = 0; j < nu; ++j) {
      sigma_entries.push_back(combine(parts, g_components.row(j).transpose()));
    }
  }
  BilinearTable sigma(table.target(), nu, nu, std::move(sigma_entries));

  TwoTermBootstrapRecord rec;
  ReducingMatrix A[2] = {reducing_matrix(f0, opts.reduce),
                         reducing_matrix(f1, opts.reduce)};
  ReducingMatrix B[2] = {reducing_matrix(g0, opts.reduce),
                         reducing_matrix(g1, opts.reduce)};

  // Pairs the splitter will validate against; measure every constant on the
  // same set so the hypothesis holds there by construction.
  const PairList sigma_pairs = validation_pairs(nu, nu, opts.split);

  // Scalar constant over random unit pairs plus the coefficient family.
  double scale = 0.0;
  {
    Rng rng(derive_seed(opts.seed, "bootstrap2/pairs"));
    auto ratio_of = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
      const double num = quasi_norm(table.target(), apply(table, u, v));
      const double den = quasi_norm(x0, u) * quasi_norm(y0, v) +
                         quasi_norm(x1, u) * quasi_norm(y1, v);
      if (den <= 0.0) return num > 0.0 ? kInf : 0.0;
      return num / den;
    };
    for (int trial = 0; trial < opts.validation_pairs; ++trial) {
      Eigen::VectorXd u(m), v(n);
      for (int i = 0; i < m; ++i) u[i] = rng.gaussian();
      for (int j = 0; j < n; ++j) v[j] = rng.gaussian();
      scale = std::max(scale, ratio_of(u, v));
    }
    for (const auto& [a, b] : sigma_pairs) {
      scale = std::max(scale, ratio_of(f_components.transpose() * a,
                                       g_components.transpose() * b));
    }
  }
  if (!std::isfinite(scale)) {
    throw BoundViolation("two-term scalar bound has no finite constant");
  }
  if (scale > 1.0 + opts.bound_slack && !opts.rescale_bound) {
    std::ostringstream msg;
    msg << "two-term scalar bound violated (measured constant " << scale
        << ")";
    throw BoundViolation(msg.str());
  }
  rec.bound_scale = std::max(1.0, scale);

  // Domination factors of the reducing matrices over the same pair family.
  auto domination_factor = [&](const ReducingMatrix& R,
                               const SpaceDescriptor& space,
                               const Eigen::MatrixXd& comps, bool first) {
    double fac = 1.0;
    for (const auto& pr : sigma_pairs) {
      const Eigen::VectorXd& coeff = first ? pr.first : pr.second;
      const double num = quasi_norm(space, comps.transpose() * coeff);
      const double den = (R.matrix * coeff).norm();
      if (den <= 1e-300) continue;
      fac = std::max(fac, num / den);
    }
    return fac;
  };

  TwoTermBound bound;
  {
    const double fa0 = domination_factor(A[0], x0, f_components, true);
    const double fa1 = domination_factor(A[1], x1, f_components, true);
    const double fb0 = domination_factor(B[0], y0, g_components, false);
    const double fb1 = domination_factor(B[1], y1, g_components, false);
    bound.a0 = rec.bound_scale * fa0 * A[0].matrix;
    bound.a1 = rec.bound_scale * fa1 * A[1].matrix;
    bound.b0 = fb0 * B[0].matrix;
    bound.b1 = fb1 * B[1].matrix;
  }

  rec.split = split_two_term(sigma, bound, opts.split);

  Eigen::VectorXd at_identity = Eigen::VectorXd::Zero(table.target().dimension());
  Eigen::VectorXd split_identity = at_identity;
  for (int l = 0; l < nu; ++l) {
    at_identity += sigma.entry(l, l);
    split_identity += rec.split->tau0.entry(l, l) + rec.split->tau1.entry(l, l);
  }
  rec.identity_consistency =
      (at_identity - split_identity).cwiseAbs().maxCoeff();
  rec.lhs_norm = quasi_norm(table.target(), at_identity);
  rec.reducing_products = {reducing_product(A[0], B[0]),
                           reducing_product(A[1], B[1])};
  rec.rhs_sum = rec.reducing_products[0] + rec.reducing_products[1];
  if (rec.rhs_sum > 0.0) {
    rec.ratio = rec.lhs_norm / rec.rhs_sum;
  } else {
    rec.ratio = 0.0;
    rec.applicable = rec.lhs_norm != 0.0;
    if (rec.applicable) rec.ratio = kInf;
  }
  return rec;
}

IdentityCheckRecord reducing_matrix_identity_check(const VectorFunction& x,
                                                   const ReduceOptions& opts) {
  IdentityCheckRecord rec;
  rec.direct = reducing_matrix(x, opts);

  const int n = x.vector_dim();
  const Eigen::MatrixXd kernel = effective_kernel(x);
  auto norm = [&](const Eigen::VectorXd& u) { return directional_norm(x, u); };
  ReduceOptions induced_opts = opts;
  induced_opts.seed = derive_seed(opts.seed, "identity-tensor");
  rec.induced = reduce_directional_norm(norm, n, kernel, induced_opts);

  const int k = n - static_cast<int>(kernel.cols());
  rec.band = (rec.direct.c_high / rec.direct.c_low) *
             (rec.induced.c_high / rec.induced.c_low);
  if (k == 0) {
    rec.max_ratio = rec.min_ratio = 1.0;
    return rec;
  }
  const auto dirs = sample_directions(
      n, std::max(2 * n, default_direction_count(n) / 2),
      derive_seed(opts.seed, "identity-check"));
  double lo = kInf, hi = 0.0;
  for (const auto& d : dirs) {
    const double da = (rec.direct.matrix * d).norm();
    const double db = (rec.induced.matrix * d).norm();
    if (da <= 1e-300 && db <= 1e-300) continue;
    if (da <= 1e-300 || db <= 1e-300) continue;
    const double r = db / da;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  rec.max_ratio = hi;
  rec.min_ratio = lo;
  return rec;
}

}  // namespace redlat
