#include "doctest.h"

#include <cmath>

#include "redlat/measure.hpp"
#include "redlat/serialization.hpp"
#include "test_support.hpp"

using namespace redlat;
using redlat::testing::make_vf;
using redlat::testing::random_vector;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("quasi_norm on plain lattices") {
  SpaceDescriptor l2 = lp_space(2.0, Eigen::VectorXd::Ones(4));
  CHECK(quasi_norm(l2, vec({1, 1, 1, 1})) == doctest::Approx(2.0).epsilon(1e-14));

  SpaceDescriptor linf = lp_space(kInfExponent, vec({0.3, 2.0, 5.0}));
  CHECK(quasi_norm(linf, vec({1, -7, 2})) == doctest::Approx(7.0).epsilon(1e-14));

  SpaceDescriptor lhalf = lp_space(0.5, Eigen::VectorXd::Ones(2));
  CHECK(quasi_norm(lhalf, vec({1, 1})) == doctest::Approx(4.0).epsilon(1e-14));

  CHECK_THROWS_AS(quasi_norm(l2, vec({1, 2})), std::invalid_argument);
}

TEST_CASE("quasi_norm with a related map") {
  // ||f||_X = ||J f|| in the base lattice.
  Eigen::MatrixXd J(3, 2);
  J << 1, 0, 0, 1, 1, 1;
  SpaceDescriptor related(2.0, DiscreteMeasureSpace(Eigen::VectorXd::Ones(3)),
                          J);
  const Eigen::VectorXd f = vec({1, 2});
  CHECK(quasi_norm(related, f) ==
        doctest::Approx(std::sqrt(1.0 + 4.0 + 9.0)).epsilon(1e-14));
  CHECK(related.dimension() == 2);
  CHECK_THROWS_AS(quasi_norm(related, vec({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("quasi_triangle_constant values") {
  CHECK(quasi_triangle_constant(2.0) == 1.0);
  CHECK(quasi_triangle_constant(kInfExponent) == 1.0);
  CHECK(quasi_triangle_constant(1.0) == 1.0);
  CHECK(quasi_triangle_constant(0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(quasi_triangle_constant(1.0 / 3.0) ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("quasi-triangle constant is the supremum of the ratio for p = 1/2") {
  // Oracle: maximize ||f+g|| / (||f|| + ||g||) over random pairs on a 2-atom
  // space, plus the disjoint-support extremal which attains the constant.
  SpaceDescriptor sp = lp_space(0.5, Eigen::VectorXd::Ones(2));
  double sup = 0.0;
  Rng rng(11);
  for (int t = 0; t < 20000; ++t) {
    const Eigen::VectorXd f = random_vector(rng, 2).cwiseAbs();
    const Eigen::VectorXd g = random_vector(rng, 2).cwiseAbs();
    const double den = quasi_norm(sp, f) + quasi_norm(sp, g);
    if (den == 0.0) continue;
    sup = std::max(sup, quasi_norm(sp, f + g) / den);
  }
  const double extremal =
      quasi_norm(sp, vec({1, 1})) /
      (quasi_norm(sp, vec({1, 0})) + quasi_norm(sp, vec({0, 1})));
  sup = std::max(sup, extremal);
  CHECK(extremal == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sup <= quasi_triangle_constant(0.5) * (1 + 1e-12));
  CHECK(sup == doctest::Approx(quasi_triangle_constant(0.5)).epsilon(1e-9));
}

TEST_CASE("directional_norm basics") {
  Rng rng(7);
  const Eigen::VectorXd w = vec({1.0, 0.5, 2.0});

  SUBCASE("homogeneity in 1-d") {
    auto x = make_vf(2.0, w, random_vector(rng, 3).transpose());
    const double base = directional_norm(x, vec({1}));
    CHECK(directional_norm(x, vec({-3.5})) ==
          doctest::Approx(3.5 * base).epsilon(1e-13));
  }

  SUBCASE("identical rows annihilate the difference direction") {
    Eigen::MatrixXd comps(2, 3);
    comps.row(0) = random_vector(rng, 3).transpose();
    comps.row(1) = comps.row(0);
    auto x = make_vf(2.0, w, comps);
    CHECK(directional_norm(x, vec({1, -1})) == 0.0);
  }

  SUBCASE("orthonormal indicators have unit directional norms") {
    auto x = make_vf(2.0, Eigen::VectorXd::Ones(4),
                     Eigen::MatrixXd::Identity(4, 4));
    for (int j = 0; j < 4; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
      e[j] = 1.0;
      CHECK(directional_norm(x, e) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  SUBCASE("length mismatch errors") {
    auto x = make_vf(2.0, w, random_vector(rng, 3).transpose());
    CHECK_THROWS_AS(directional_norm(x, vec({1, 2})), std::invalid_argument);
  }
}

TEST_CASE("homogeneity and lattice monotonicity") {
  Rng rng(21);
  for (double p : {1.0 / 3.0, 0.5, 1.0, 2.0, kInfExponent}) {
    SpaceDescriptor sp = lp_space(p, vec({0.25, 1.5, 3.0, 0.1}));
    for (int t = 0; t < 200; ++t) {
      const Eigen::VectorXd f = random_vector(rng, 4);
      const double lam = rng.uniform(-4.0, 4.0);
      const double lhs = quasi_norm(sp, lam * f);
      const double rhs = std::abs(lam) * quasi_norm(sp, f);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

      // |h| <= |f| pointwise implies norm domination, exactly.
      Eigen::VectorXd h = f;
      for (int i = 0; i < 4; ++i) h[i] *= rng.uniform();
      CHECK(quasi_norm(sp, h) <= quasi_norm(sp, f));
    }
  }
}

TEST_CASE("quasi-triangle inequality over random pairs") {
  Rng rng(33);
  for (double p : {1.0 / 3.0, 0.5, 1.0, 2.0, kInfExponent}) {
    SpaceDescriptor sp = lp_space(p, vec({1.0, 0.5, 2.0, 0.7, 1.3}));
    const double kappa = quasi_triangle_constant(p);
    for (int t = 0; t < 1000; ++t) {
      const Eigen::VectorXd f = random_vector(rng, 5);
      const Eigen::VectorXd g = random_vector(rng, 5);
      CHECK(quasi_norm(sp, f + g) <=
            kappa * (quasi_norm(sp, f) + quasi_norm(sp, g)) * (1 + 1e-12));
    }
  }
}

TEST_CASE("Hoelder inequality on the lattice") {
  Rng rng(55);
  const Eigen::VectorXd w = vec({0.5, 1.0, 2.0, 0.25});
  struct Triple {
    double p, q, r;
  };
  for (const Triple& t : {Triple{2, 2, 1}, Triple{1, 1, 0.5}, Triple{3, 1.5, 1},
                          Triple{4, 4, 2}, Triple{kInfExponent, 5, 5},
                          Triple{0.5, 0.5, 0.25}}) {
    SpaceDescriptor sp_p = lp_space(t.p, w);
    SpaceDescriptor sp_q = lp_space(t.q, w);
    SpaceDescriptor sp_r = lp_space(t.r, w);
    for (int trial = 0; trial < 400; ++trial) {
      const Eigen::VectorXd f = random_vector(rng, 4);
      const Eigen::VectorXd g = random_vector(rng, 4);
      const double lhs = quasi_norm(sp_r, f.cwiseProduct(g));
      const double rhs = quasi_norm(sp_p, f) * quasi_norm(sp_q, g);
      CHECK(lhs <= rhs * (1 + 1e-10));
    }
  }
}

TEST_CASE("JSON round-trip is exact") {
  Rng rng(77);
  Eigen::MatrixXd comps = redlat::testing::random_components(rng, 3, 5);
  comps(0, 0) = 0.1;  // not exactly representable; round-trip must still hold
  Eigen::VectorXd w(5);
  for (int i = 0; i < 5; ++i) w[i] = std::exp(rng.gaussian());
  auto f = make_vf(0.5, w, comps);

  const Json j = to_json(f);
  const VectorFunction f2 = vector_function_from_json(j);
  CHECK(f2.space().exponent() == f.space().exponent());
  CHECK((f2.space().base().weights() - w).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f2.components() - comps).cwiseAbs().maxCoeff() == 0.0);

  // Through the printed form as well.
  const VectorFunction f3 = vector_function_from_json(Json::parse(j.dump()));
  CHECK((f3.components() - comps).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f3.space().base().weights() - w).cwiseAbs().maxCoeff() == 0.0);

  SpaceDescriptor inf_space = lp_space(kInfExponent, w);
  const Json ji = to_json(inf_space);
  CHECK(std::isinf(space_from_json(Json::parse(ji.dump())).exponent()));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(DiscreteMeasureSpace(vec({1.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasureSpace(vec({-1.0})), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasureSpace(Eigen::VectorXd()),
                  std::invalid_argument);
  CHECK_THROWS_AS(lp_space(0.0, vec({1.0})), std::invalid_argument);
  CHECK_THROWS_AS(lp_space(-2.0, vec({1.0})), std::invalid_argument);

  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 3, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(make_vf(2.0, vec({1.0, 1.0}), bad), std::invalid_argument);
}
