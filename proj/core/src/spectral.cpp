#include "redlat/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "redlat/rng.hpp"

namespace redlat {

namespace {

// FFTW planning is not thread-safe; execution on plan-local buffers is.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

int signed_frequency(int k, int n) { return k <= n / 2 ? k : k - n; }

double multiplier_value(const FractionalOperator& op, double xi_sq) {
  if (op.kind == MultiplierKind::kHomogeneous) {
    if (xi_sq == 0.0) return 0.0;
    return std::pow(xi_sq, 0.5 * op.order);
  }
  return std::pow(1.0 + xi_sq, 0.5 * op.order);
}

class ComplexDft {
 public:
  ComplexDft(int dim, int n) : dim_(dim), n_(n), size_(1) {
    for (int i = 0; i < dim; ++i) size_ *= n;
    in_ = fftw_alloc_complex(size_);
    out_ = fftw_alloc_complex(size_);
    std::scoped_lock lock(fftw_mutex());
    if (dim == 1) {
      fwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      fwd_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }

  ~ComplexDft() {
    std::scoped_lock lock(fftw_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }

  ComplexDft(const ComplexDft&) = delete;
  ComplexDft& operator=(const ComplexDft&) = delete;

  std::vector<std::complex<double>> forward(const Eigen::VectorXd& f) {
    for (int i = 0; i < size_; ++i) {
      in_[i][0] = f[i];
      in_[i][1] = 0.0;
    }
    fftw_execute(fwd_);
    std::vector<std::complex<double>> spec(size_);
    for (int i = 0; i < size_; ++i) spec[i] = {out_[i][0], out_[i][1]};
    return spec;
  }

  Eigen::VectorXd backward_real(const std::vector<std::complex<double>>& spec) {
    for (int i = 0; i < size_; ++i) {
      in_[i][0] = spec[i].real();
      in_[i][1] = spec[i].imag();
    }
    fftw_execute(bwd_);
    Eigen::VectorXd f(size_);
    const double scale = 1.0 / size_;
    for (int i = 0; i < size_; ++i) f[i] = out_[i][0] * scale;
    return f;
  }

 private:
  int dim_, n_, size_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

}  // namespace

PeriodicGrid::PeriodicGrid(int dim, int points_per_axis)
    : dim_(dim), n_(points_per_axis), size_(1) {
  if (dim_ != 1 && dim_ != 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2");
  }
  if (n_ < 8 || (n_ & (n_ - 1)) != 0) {
    throw std::invalid_argument("points per axis must be a power of two >= 8");
  }
  if (dim_ == 2 && n_ > 128) {
    throw std::invalid_argument("2-d grids are limited to N <= 128");
  }
  for (int i = 0; i < dim_; ++i) size_ *= n_;
}

double PeriodicGrid::quadrature_weight() const {
  return std::pow(2.0 * std::numbers::pi / n_, dim_);
}

DiscreteMeasureSpace PeriodicGrid::measure_space() const {
  return DiscreteMeasureSpace(
      Eigen::VectorXd::Constant(size_, quadrature_weight()));
}

SpaceDescriptor PeriodicGrid::lp(double exponent) const {
  return SpaceDescriptor(exponent, measure_space());
}

Eigen::VectorXd PeriodicGrid::position(int idx) const {
  Eigen::VectorXd x(dim_);
  const double h = 2.0 * std::numbers::pi / n_;
  if (dim_ == 1) {
    x[0] = h * idx;
  } else {
    x[0] = h * (idx / n_);
    x[1] = h * (idx % n_);
  }
  return x;
}

Eigen::VectorXd apply_fractional(const FractionalOperator& op,
                                 const PeriodicGrid& grid,
                                 const Eigen::VectorXd& f) {
  if (f.size() != grid.size()) {
    throw std::invalid_argument("apply_fractional: sample count mismatch");
  }
  ComplexDft dft(grid.dim(), grid.points_per_axis());
  auto spec = dft.forward(f);
  const int n = grid.points_per_axis();
  if (grid.dim() == 1) {
    for (int k = 0; k < n; ++k) {
      const double xi = signed_frequency(k, n);
      spec[k] *= multiplier_value(op, xi * xi);
    }
  } else {
    for (int k1 = 0; k1 < n; ++k1) {
      const double a = signed_frequency(k1, n);
      for (int k2 = 0; k2 < n; ++k2) {
        const double b = signed_frequency(k2, n);
        spec[k1 * n + k2] *= multiplier_value(op, a * a + b * b);
      }
    }
  }
  return dft.backward_real(spec);
}

Eigen::MatrixXd fractional_matrix(const FractionalOperator& op,
                                  const PeriodicGrid& grid) {
  const int S = grid.size();
  Eigen::MatrixXd M(S, S);
  for (int j = 0; j < S; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(S);
    e[j] = 1.0;
    M.col(j) = apply_fractional(op, grid, e);
  }
  return M;
}

VectorFunction random_band_limited(const PeriodicGrid& grid, int cutoff, int n,
                                   std::uint64_t seed) {
  if (cutoff < 1 || cutoff >= grid.points_per_axis() / 2) {
    throw std::invalid_argument("cutoff must lie in [1, N/2)");
  }
  const int N = grid.points_per_axis();
  const int S = grid.size();
  Eigen::MatrixXd comps(n, S);
  const SpaceDescriptor l2 = grid.lp(2.0);

  for (int comp = 0; comp < n; ++comp) {
    Rng rng(derive_seed(seed, "band_limited", comp));
    std::vector<std::complex<double>> spec(S, {0.0, 0.0});
    if (grid.dim() == 1) {
      for (int k = 0; k < N; ++k) {
        const int xi = signed_frequency(k, N);
        if (std::abs(xi) > cutoff) continue;
        if (xi < 0) continue;  // filled by conjugate symmetry
        if (xi == 0) {
          spec[k] = {rng.gaussian(), 0.0};
        } else {
          const std::complex<double> c{rng.gaussian(), rng.gaussian()};
          spec[k] = c;
          spec[(N - k) % N] = std::conj(c);
        }
      }
    } else {
      for (int k1 = 0; k1 < N; ++k1) {
        const int a = signed_frequency(k1, N);
        for (int k2 = 0; k2 < N; ++k2) {
          const int b = signed_frequency(k2, N);
          if (a * a + b * b > cutoff * cutoff) continue;
          // Fill each conjugate pair once, keyed by lexicographic order.
          if (a < 0 || (a == 0 && b < 0)) continue;
          const int idx = k1 * N + k2;
          const int conj_idx = ((N - k1) % N) * N + (N - k2) % N;
          if (a == 0 && b == 0) {
            spec[idx] = {rng.gaussian(), 0.0};
          } else {
            const std::complex<double> c{rng.gaussian(), rng.gaussian()};
            spec[idx] = c;
            spec[conj_idx] = std::conj(c);
          }
        }
      }
    }
    ComplexDft dft(grid.dim(), N);
    Eigen::VectorXd values = dft.backward_real(spec);
    const double nrm = quasi_norm(l2, values);
    if (nrm > 0.0) values /= nrm;
    comps.row(comp) = values.transpose();
  }
  return VectorFunction(l2, comps);
}

namespace {

void check_regime(const PeriodicGrid& grid, double s,
                  const KatoPonceExponents& e) {
  auto conjugate_ok = [&](double p, double q) {
    const double lhs = 1.0 / e.r;
    const double rhs = (std::isinf(p) ? 0.0 : 1.0 / p) +
                       (std::isinf(q) ? 0.0 : 1.0 / q);
    return std::abs(lhs - rhs) <= 1e-12;
  };
  if (!conjugate_ok(e.p0, e.q0) || !conjugate_ok(e.p1, e.q1)) {
    throw std::invalid_argument("exponents must satisfy 1/r = 1/p_k + 1/q_k");
  }
  for (double p : {e.p0, e.q0, e.p1, e.q1}) {
    if (!(p > 1.0)) {
      throw std::invalid_argument("factor exponents must lie in (1, inf]");
    }
  }
  if (!(e.r > 0.5)) {
    throw std::invalid_argument("target exponent must exceed 1/2");
  }
  const bool even_integer =
      std::abs(s - 2.0 * std::round(s / 2.0)) < 1e-12 && s > 0.0;
  const double threshold = grid.dim() * std::max(1.0 / e.r - 1.0, 0.0);
  if (!(s > threshold) && !even_integer) {
    throw std::invalid_argument(
        "order must exceed d(1/r - 1)_+ or be an even integer");
  }
}

}  // namespace

KatoPonceRecord kato_ponce_sides(const PeriodicGrid& grid, MultiplierKind kind,
                                 double s, const KatoPonceExponents& exps,
                                 const Eigen::MatrixXd& f_components,
                                 const Eigen::MatrixXd& g_components) {
  check_regime(grid, s, exps);
  const int S = grid.size();
  const int n = static_cast<int>(f_components.rows());
  if (g_components.rows() != n || f_components.cols() != S ||
      g_components.cols() != S) {
    throw std::invalid_argument("kato_ponce_sides: component shape mismatch");
  }

  const FractionalOperator op{kind, s};
  const Eigen::VectorXd w = grid.measure_space().weights();

  // Left side: D^s applied to the pointwise dot product.
  Eigen::VectorXd dot = Eigen::VectorXd::Zero(S);
  for (int i = 0; i < n; ++i) {
    dot += f_components.row(i).cwiseProduct(g_components.row(i)).transpose();
  }
  const Eigen::VectorXd lhs_fun = apply_fractional(op, grid, dot);
  KatoPonceRecord rec;
  rec.lhs = weighted_p_norm(lhs_fun, w, exps.r);

  // Right side, term k: (A_k f)(x) . (B_k g)(y) with (D^s, I) and (I, D^s).
  Eigen::MatrixXd df(n, S), dg(n, S);
  for (int i = 0; i < n; ++i) {
    df.row(i) =
        apply_fractional(op, grid, f_components.row(i).transpose()).transpose();
    dg.row(i) =
        apply_fractional(op, grid, g_components.row(i).transpose()).transpose();
  }

  auto iterated = [&](const Eigen::MatrixXd& xc, const Eigen::MatrixXd& yc,
                      double p_out, double q_in) {
    Eigen::VectorXd profile(S);
    for (int sx = 0; sx < S; ++sx) {
      const Eigen::VectorXd slice = yc.transpose() * xc.col(sx);
      profile[sx] = weighted_p_norm(slice, w, q_in);
    }
    return weighted_p_norm(profile, w, p_out);
  };
  auto length_norm = [&](const Eigen::MatrixXd& c, double p) {
    const Eigen::VectorXd len = c.colwise().norm();
    return weighted_p_norm(len, w, p);
  };

  rec.vec_terms = {iterated(df, g_components, exps.p0, exps.q0),
                   iterated(f_components, dg, exps.p1, exps.q1)};
  rec.scalar_terms = {length_norm(df, exps.p0) * length_norm(g_components, exps.q0),
                      length_norm(f_components, exps.p1) * length_norm(dg, exps.q1)};
  rec.rhs_vec = rec.vec_terms[0] + rec.vec_terms[1];
  rec.rhs_scalar = rec.scalar_terms[0] + rec.scalar_terms[1];

  if (rec.rhs_vec > 0.0) {
    rec.ratio_vec = rec.lhs / rec.rhs_vec;
  } else {
    rec.applicable = rec.lhs != 0.0;
    rec.ratio_vec = rec.applicable ? std::numeric_limits<double>::infinity() : 0.0;
  }
  rec.ratio_scalar = rec.rhs_scalar > 0.0 ? rec.lhs / rec.rhs_scalar : 0.0;
  rec.reduction = rec.rhs_scalar > 0.0 ? rec.rhs_vec / rec.rhs_scalar : 0.0;
  return rec;
}

}  // namespace redlat
