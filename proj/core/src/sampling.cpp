#include "redlat/sampling.hpp"

#include "redlat/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace redlat {

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t index) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a over the tag
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  std::uint64_t s = splitmix64(master ^ h);
  return splitmix64(s ^ (index * 0x9E3779B97F4A7C15ULL + 1));
}

double Rng::gaussian() {
  // Box-Muller; reject u1 == 0.
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double inverse_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("inverse_normal_cdf needs u in (0,1)");
  }
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (u < p_low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - p_low) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step against the exact CDF.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - u;
  const double v =
      e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - v / (1.0 + 0.5 * x * v);
}

namespace {

// Generalized golden ratio: the positive root of g^(dim+1) = g + 1, driving
// the Kronecker (additive recurrence) low-discrepancy sequence.
double kronecker_base(int dim) {
  double g = 1.5;
  for (int it = 0; it < 64; ++it) {
    const double f = std::pow(g, dim + 1) - g - 1.0;
    const double fp = (dim + 1) * std::pow(g, dim) - 1.0;
    g -= f / fp;
  }
  return g;
}

Eigen::VectorXd kronecker_gaussian_point(const Eigen::VectorXd& alpha,
                                         const Eigen::VectorXd& offset,
                                         std::int64_t t) {
  const int dim = static_cast<int>(alpha.size());
  Eigen::VectorXd z(dim);
  for (int j = 0; j < dim; ++j) {
    double u = std::fmod(offset[j] + static_cast<double>(t + 1) * alpha[j], 1.0);
    u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
    z[j] = inverse_normal_cdf(u);
  }
  return z;
}

}  // namespace

std::vector<Eigen::VectorXd> sample_directions(int dim, int count,
                                               std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (count < 2 * dim) {
    throw std::invalid_argument("direction count must be at least 2*dim");
  }
  if (count % 2 != 0) {
    throw std::invalid_argument("direction count must be even (antipodal set)");
  }

  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (int j = 0; j < dim; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[j] = 1.0;
    out.push_back(e);
    out.push_back(-e);
  }

  const double g = kronecker_base(dim);
  Eigen::VectorXd alpha(dim), offset(dim);
  Rng rng(derive_seed(seed, "sample_directions"));
  for (int j = 0; j < dim; ++j) {
    alpha[j] = std::fmod(std::pow(1.0 / g, j + 1), 1.0);
    offset[j] = rng.uniform();
  }

  std::int64_t t = 0;
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd z = kronecker_gaussian_point(alpha, offset, t++);
    const double nrm = z.norm();
    if (nrm < 1e-12) continue;
    z /= nrm;
    out.push_back(z);
    out.push_back(-z);
  }
  return out;
}

std::vector<Eigen::VectorXd> sphere_grid(int dim, int count,
                                         std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  if (dim == 1) {
    out.push_back(Eigen::VectorXd::Constant(1, 1.0));
    out.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return out;
  }
  if (dim == 2) {
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * std::numbers::pi * i / count;
      Eigen::VectorXd v(2);
      v << std::cos(th), std::sin(th);
      out.push_back(v);
    }
    return out;
  }
  if (dim == 3) {
    // Fibonacci sphere lattice.
    out.reserve(count);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = 2.0 * std::numbers::pi * i / golden;
      Eigen::VectorXd v(3);
      v << r * std::cos(th), r * std::sin(th), z;
      out.push_back(v);
    }
    return out;
  }
  const int even = count + (count % 2);
  return sample_directions(dim, std::max(even, 2 * dim), seed);
}

}  // namespace redlat
