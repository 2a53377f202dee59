#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>

#include "redlat/instances.hpp"
#include "redlat/reducing.hpp"
#include "redlat/sampling.hpp"
#include "test_support.hpp"

using namespace redlat;
using redlat::testing::gram_root;
using redlat::testing::make_vf;
using redlat::testing::random_components;
using redlat::testing::spectral_norm;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Smallest axis-aligned ellipsoid {u : |diag(d) u| <= 1} containing the
// points, by brute force over a diagonal grid; valid as an mvee oracle for
// point sets symmetric under all coordinate reflections.
Eigen::VectorXd diagonal_mvee_oracle(const std::vector<Eigen::VectorXd>& pts) {
  const int k = static_cast<int>(pts.front().size());
  Eigen::VectorXd best = Eigen::VectorXd::Zero(k);
  double best_vol = -1.0;  // maximize prod(d) == minimize ellipsoid volume
  Eigen::VectorXd d = Eigen::VectorXd::Ones(k);
  const int steps = 400;
  std::function<void(int)> sweep = [&](int axis) {
    if (axis == k) {
      for (const auto& p : pts) {
        if ((d.asDiagonal() * p).norm() > 1.0 + 1e-12) return;
      }
      const double vol = d.prod();
      if (vol > best_vol) {
        best_vol = vol;
        best = d;
      }
      return;
    }
    for (int i = 1; i <= steps; ++i) {
      d[axis] = 2.0 * i / steps;
      sweep(axis + 1);
    }
  };
  sweep(0);
  return best;
}

}  // namespace

TEST_CASE("kernel_of") {
  Rng rng(3);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(6);

  SUBCASE("duplicated row gives the difference direction") {
    Eigen::MatrixXd comps(2, 6);
    comps.row(0) = redlat::testing::random_vector(rng, 6).transpose();
    comps.row(1) = comps.row(0);
    const Eigen::MatrixXd K = kernel_of(make_vf(2.0, w, comps));
    REQUIRE(K.cols() == 1);
    Eigen::VectorXd expected = vec({1, -1}) / std::sqrt(2.0);
    CHECK(std::abs(std::abs(K.col(0).dot(expected)) - 1.0) < 1e-12);
  }

  SUBCASE("independent rows give an empty basis") {
    const Eigen::MatrixXd comps = random_components(rng, 3, 6);
    CHECK(kernel_of(make_vf(2.0, w, comps)).cols() == 0);
  }

  SUBCASE("rows (f, 2f, g)") {
    Eigen::MatrixXd comps(3, 6);
    comps.row(0) = redlat::testing::random_vector(rng, 6).transpose();
    comps.row(1) = 2.0 * comps.row(0);
    comps.row(2) = redlat::testing::random_vector(rng, 6).transpose();
    const auto x = make_vf(2.0, w, comps);
    const Eigen::MatrixXd K = kernel_of(x);
    REQUIRE(K.cols() == 1);
    // Oracle: nullspace of the 3 x S matrix by direct elimination.
    Eigen::FullPivLU<Eigen::MatrixXd> lu(comps.transpose());
    const Eigen::MatrixXd oracle = lu.kernel();
    REQUIRE(oracle.cols() == 1);
    const Eigen::VectorXd ov = oracle.col(0).normalized();
    CHECK(std::abs(std::abs(K.col(0).dot(ov)) - 1.0) < 1e-10);
    const Eigen::VectorXd expected = vec({2, -1, 0}) / std::sqrt(5.0);
    CHECK(std::abs(std::abs(K.col(0).dot(expected)) - 1.0) < 1e-10);
  }
}

TEST_CASE("mvee on symmetric point sets") {
  SUBCASE("cross points give the unit disk") {
    std::vector<Eigen::VectorXd> pts = {vec({1, 0}), vec({-1, 0}), vec({0, 1}),
                                        vec({0, -1})};
    const Eigen::VectorXd oracle = diagonal_mvee_oracle(pts);
    CHECK(oracle[0] == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(oracle[1] == doctest::Approx(1.0).epsilon(5e-3));
    const Eigen::MatrixXd Q = mvee(pts, 1e-10);
    CHECK(spectral_norm(Q - Eigen::MatrixXd::Identity(2, 2)) < 1e-8);
  }

  SUBCASE("stretched cross gives diag(1, 1/2)") {
    std::vector<Eigen::VectorXd> pts = {vec({1, 0}), vec({-1, 0}), vec({0, 2}),
                                        vec({0, -2})};
    const Eigen::VectorXd oracle = diagonal_mvee_oracle(pts);
    CHECK(oracle[0] == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(oracle[1] == doctest::Approx(0.5).epsilon(5e-3));
    Eigen::MatrixXd expected(2, 2);
    expected << 1, 0, 0, 0.5;
    CHECK(spectral_norm(mvee(pts, 1e-10) - expected) < 1e-8);
  }

  SUBCASE("one dimension is the reciprocal radius") {
    std::vector<Eigen::VectorXd> pts = {vec({3}), vec({-3})};
    const Eigen::MatrixXd Q = mvee(pts, 1e-10);
    CHECK(Q(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("rank-deficient point sets are rejected") {
    std::vector<Eigen::VectorXd> pts = {vec({1, 1}), vec({-1, -1}),
                                        vec({2, 2}), vec({-2, -2})};
    CHECK_THROWS_AS(mvee(pts, 1e-9), std::invalid_argument);
  }

  SUBCASE("containment is certified on random clouds") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const int k = 2 + static_cast<int>(rng.below(3));
      std::vector<Eigen::VectorXd> pts;
      for (int i = 0; i < 40; ++i) {
        Eigen::VectorXd p = redlat::testing::random_vector(rng, k);
        pts.push_back(p);
        pts.push_back(-p);
      }
      const Eigen::MatrixXd Q = mvee(pts, 1e-9);
      for (const auto& p : pts) {
        CHECK((Q * p).norm() <= 1.0 + 1e-7);
      }
    }
  }
}

TEST_CASE("reducing_matrix") {
  Rng rng(29);

  SUBCASE("one-dimensional case is exact") {
    auto x = make_vf(3.0, vec({1.0, 2.0}),
                     redlat::testing::random_vector(rng, 2).transpose());
    const ReducingMatrix r = reducing_matrix(x);
    CHECK(r.matrix(0, 0) ==
          doctest::Approx(directional_norm(x, vec({1}))).epsilon(1e-12));
    CHECK(r.c_low == 1.0);
    CHECK(r.c_high == 1.0);
  }

  SUBCASE("exponent 2 recovers the Gram root") {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(3));
      const int S = 8 + static_cast<int>(rng.below(24));
      Eigen::VectorXd w(S);
      for (int s = 0; s < S; ++s) w[s] = std::exp(0.3 * rng.gaussian());
      const Eigen::MatrixXd comps = random_components(rng, n, S);
      auto x = make_vf(2.0, w, comps);
      ReduceOptions opts;
      opts.tol = 1e-12;
      const ReducingMatrix r = reducing_matrix(x, opts);
      const Eigen::MatrixXd oracle = gram_root(comps, w);
      CHECK(spectral_norm(r.matrix - oracle) <=
            1e-6 * spectral_norm(oracle));
    }
  }

  SUBCASE("orthonormal indicators give the identity") {
    auto x = make_vf(2.0, Eigen::VectorXd::Ones(4),
                     Eigen::MatrixXd::Identity(4, 4));
    ReduceOptions opts;
    opts.tol = 1e-12;
    const ReducingMatrix r = reducing_matrix(x, opts);
    CHECK(spectral_norm(r.matrix - Eigen::MatrixXd::Identity(4, 4)) < 1e-8);
    CHECK(r.c_high / r.c_low <= 1.0 + 1e-8);
  }

  SUBCASE("scaling equivariance") {
    const Eigen::MatrixXd comps = random_components(rng, 3, 12);
    const Eigen::VectorXd w = Eigen::VectorXd::Ones(12);
    for (double p : {0.5, 1.0, 2.0, kInfExponent}) {
      auto x = make_vf(p, w, comps);
      auto xs = make_vf(p, w, 3.7 * comps);
      const ReducingMatrix a = reducing_matrix(x);
      const ReducingMatrix b = reducing_matrix(xs);
      CHECK(spectral_norm(b.matrix - 3.7 * a.matrix) <=
            1e-8 * spectral_norm(b.matrix));
    }
  }

  SUBCASE("zero function yields the zero matrix with full kernel") {
    auto x = make_vf(2.0, vec({1.0, 1.0}), Eigen::MatrixXd::Zero(3, 2));
    const ReducingMatrix r = reducing_matrix(x);
    CHECK(r.matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.kernel_basis.cols() == 3);
    CHECK(r.c_low == 1.0);
    CHECK(r.c_high == 1.0);
  }

  SUBCASE("kernel directions are extended by zero") {
    Eigen::MatrixXd comps(2, 5);
    comps.row(0) = redlat::testing::random_vector(rng, 5).transpose();
    comps.row(1) = -2.0 * comps.row(0);
    auto x = make_vf(2.0, Eigen::VectorXd::Ones(5), comps);
    const ReducingMatrix r = reducing_matrix(x);
    REQUIRE(r.kernel_basis.cols() == 1);
    CHECK((r.matrix * r.kernel_basis.col(0)).norm() < 1e-12);
  }

  SUBCASE("certified sandwich holds on fresh validation directions") {
    for (double p : {0.5, 1.0, 1.5, 2.0, 4.0, kInfExponent}) {
      const Eigen::MatrixXd comps = random_components(rng, 3, 16);
      auto x = make_vf(p, Eigen::VectorXd::Ones(16), comps);
      const ReducingMatrix r = reducing_matrix(x);
      // Re-check on a third, independent sample.
      const auto dirs = sample_directions(3, 64, 987654321u);
      for (const auto& d : dirs) {
        const double nu = directional_norm(x, d);
        const double ae = (r.matrix * d).norm();
        CHECK(nu <= r.c_high * ae * (1 + 1e-6));
        CHECK(nu >= r.c_low * ae * (1 - 1e-6));
      }
    }
  }

  SUBCASE("John bound for convex exponents") {
    for (double p : {1.0, 1.5, 2.0, 4.0, kInfExponent}) {
      for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        auto x = random_lattice_instance(24, n, p,
                                         derive_seed(1000 + trial, "john"));
        const ReducingMatrix r = reducing_matrix(x);
        CHECK(r.c_high / r.c_low <= std::sqrt(n) * 1.01);
      }
    }
  }

  SUBCASE("coordinate equivariance under orthogonal maps") {
    const int n = 3;
    const Eigen::MatrixXd comps = random_components(rng, n, 20);
    const Eigen::VectorXd w = Eigen::VectorXd::Ones(20);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_components(rng, n, n));
    const Eigen::MatrixXd U = qr.householderQ();
    for (double p : {1.0, 2.0, kInfExponent}) {
      auto x = make_vf(p, w, comps);
      auto xu = make_vf(p, w, U * comps);
      const ReducingMatrix a = reducing_matrix(x);
      const ReducingMatrix b = reducing_matrix(xu);
      const double band =
          (a.c_high / a.c_low) * (b.c_high / b.c_low) * (1 + 1e-9);
      const auto dirs = sample_directions(n, 64, 13579u);
      for (const auto& e : dirs) {
        const double lhs = (b.matrix * e).norm();
        const double rhs = (a.matrix * U.transpose() * e).norm();
        if (lhs < 1e-14 && rhs < 1e-14) continue;
        CHECK(lhs <= band * rhs);
        CHECK(rhs <= band * lhs);
      }
    }
  }
}

TEST_CASE("reducing_product") {
  auto from = [](const Eigen::MatrixXd& m) {
    ReducingMatrix r;
    r.matrix = m;
    r.kernel_basis = Eigen::MatrixXd(m.rows(), 0);
    return r;
  };

  CHECK(reducing_product(from(Eigen::MatrixXd::Identity(3, 3)),
                         from(Eigen::MatrixXd::Identity(3, 3))) ==
        doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 2, 0, 0, 0;
  b << 0, 0, 0, 3;
  CHECK(reducing_product(from(a), from(b)) == doctest::Approx(0.0));

  a << 2, 0, 0, 1;
  b << 1, 0, 0, 3;
  CHECK(reducing_product(from(a), from(b)) == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(reducing_product(from(Eigen::MatrixXd::Identity(2, 2)),
                                   from(Eigen::MatrixXd::Identity(3, 3))),
                  std::invalid_argument);

  SUBCASE("symmetry |AB| = |BA| to 1e-12") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(3));
      const Eigen::MatrixXd ra = random_components(rng, n, n);
      const Eigen::MatrixXd rb = random_components(rng, n, n);
      const ReducingMatrix A = from(ra * ra.transpose());
      const ReducingMatrix B = from(rb * rb.transpose());
      const double ab = reducing_product(A, B);
      const double ba = reducing_product(B, A);
      CHECK(std::abs(ab - ba) <= 1e-12 * std::max(1.0, std::abs(ab)));
    }
  }
}
