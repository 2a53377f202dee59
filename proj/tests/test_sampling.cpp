#include "doctest.h"

#include <cmath>
#include <set>

#include "redlat/sampling.hpp"
#include "test_support.hpp"

using namespace redlat;

TEST_CASE("sample_directions contract") {
  SUBCASE("1-d gives the two signs") {
    const auto dirs = sample_directions(1, 2, 42);
    REQUIRE(dirs.size() == 2);
    CHECK(dirs[0][0] == 1.0);
    CHECK(dirs[1][0] == -1.0);
  }

  SUBCASE("antipodal symmetry and unit length") {
    const auto dirs = sample_directions(2, 8, 42);
    REQUIRE(dirs.size() == 8);
    for (std::size_t i = 0; i < dirs.size(); i += 2) {
      CHECK((dirs[i] + dirs[i + 1]).norm() == doctest::Approx(0.0).epsilon(1e-15));
      CHECK(std::abs(dirs[i].norm() - 1.0) <= 1e-12);
    }
  }

  SUBCASE("standard basis always included") {
    const auto dirs = sample_directions(3, 64, 9);
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(3);
      e[j] = 1.0;
      bool plus = false, minus = false;
      for (const auto& d : dirs) {
        if ((d - e).norm() < 1e-14) plus = true;
        if ((d + e).norm() < 1e-14) minus = true;
      }
      CHECK(plus);
      CHECK(minus);
    }
  }

  SUBCASE("deterministic for a fixed seed") {
    const auto a = sample_directions(4, 128, 1234);
    const auto b = sample_directions(4, 128, 1234);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK((a[i] - b[i]).cwiseAbs().maxCoeff() == 0.0);
    }
    const auto c = sample_directions(4, 128, 1235);
    double diff = 0.0;
    for (std::size_t i = 8; i < c.size(); ++i) {
      diff = std::max(diff, (a[i] - c[i]).cwiseAbs().maxCoeff());
    }
    CHECK(diff > 1e-6);  // different seed moves the non-basis points
  }

  SUBCASE("count validation") {
    CHECK_THROWS_AS(sample_directions(3, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_directions(2, 7, 1), std::invalid_argument);
  }
}

TEST_CASE("inverse_normal_cdf agrees with erfc") {
  for (double u : {0.001, 0.01, 0.2, 0.5, 0.77, 0.99, 0.9999}) {
    const double x = inverse_normal_cdf(u);
    const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
    CHECK(back == doctest::Approx(u).epsilon(1e-12));
  }
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), std::invalid_argument);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), std::invalid_argument);
}

TEST_CASE("sphere_grid covers low dimensions") {
  CHECK(sphere_grid(1, 10, 0).size() == 2);
  const auto g2 = sphere_grid(2, 64, 0);
  CHECK(g2.size() == 64);
  const auto g3 = sphere_grid(3, 128, 0);
  CHECK(g3.size() == 128);
  for (const auto& v : g3) CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
}
