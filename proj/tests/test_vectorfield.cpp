#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinorbit/errors.hpp"
#include "spinorbit/vectorfield.hpp"

using namespace spinorbit;
constexpr double pi = std::numbers::pi;

TEST_SUITE("vectorfield") {
  TEST_CASE("radial and azimuthal q = 1/2 patterns") {
    const Eigen::Vector2d radial = field_at(1, 0.0, pi / 3);
    CHECK(std::abs(std::atan2(radial.y(), radial.x()) - pi / 3) < 1e-15);

    const Eigen::Vector2d azimuthal = field_at(1, pi / 2, 0.0);
    CHECK(std::abs(azimuthal.x()) < 1e-15);
    CHECK(std::abs(azimuthal.y() + 1.0) < 1e-15);

    const Eigen::Vector2d q1 = field_at(2, 0.0, pi);
    CHECK(std::abs(q1.x() - 1.0) < 1e-15);
    CHECK(std::abs(q1.y()) < 1e-15);
  }

  TEST_CASE("sampled grids") {
    const auto four = sample_field(1, 0.0, 1, 4);
    REQUIRE(four.size() == 4);
    for (const auto& s : four) {
      // radial: direction parallel to position on the unit ring
      CHECK(std::abs(s.ex - s.x) < 1e-15);
      CHECK(std::abs(s.ey - s.y) < 1e-15);
    }
    CHECK(sample_field(2, 0.3, 2, 8).size() == 16);
    CHECK_THROWS_AS(sample_field(1, 0.0, 0, 8), InvalidParameter);
    CHECK_THROWS_AS(sample_field(1, 0.0, 2, 3), InvalidParameter);
    CHECK_THROWS_AS(sample_field(0, 0.0, 2, 8), InvalidParameter);
  }

  TEST_CASE("three-fold symmetry of q = 3/2") {
    const int points = 12;
    const auto grid = sample_field(3, pi / 4, 3, points);
    for (int ring = 0; ring < 3; ++ring) {
      for (int j = 0; j < points; ++j) {
        const auto& a = grid[static_cast<std::size_t>(ring * points + j)];
        const auto& b = grid[static_cast<std::size_t>(ring * points + (j + points / 3) % points)];
        CHECK(std::abs(a.ex - b.ex) < 1e-12);
        CHECK(std::abs(a.ey - b.ey) < 1e-12);
      }
    }
  }

  TEST_CASE("pattern periods") {
    CHECK(pattern_period(2) == doctest::Approx(pi));
    CHECK(pattern_period(-2) == doctest::Approx(pi));
    CHECK(pattern_period(3) == doctest::Approx(2 * pi / 3));
    CHECK(pattern_period(-3) == doctest::Approx(2 * pi / 3));
    CHECK(pattern_period(1) == doctest::Approx(2 * pi));
  }

  TEST_CASE("conjugate fields oscillate in opposite directions") {
    auto [a, b] = conjugate_fields(2, 0.0, pi / 6);
    CHECK(a == doctest::Approx(pi / 3));
    CHECK(b == doctest::Approx(-pi / 3));
    auto [c, d] = conjugate_fields(3, pi / 4, 0.0);
    CHECK(c == doctest::Approx(-pi / 4));
    CHECK(d == doctest::Approx(pi / 4));
    auto [e, f] = conjugate_fields(2, 0.0, 0.0);
    CHECK(e == 0.0);
    CHECK(f == 0.0);
  }

  TEST_CASE("properties: periodicity, conjugacy, unit magnitude") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-pi, pi);
    std::uniform_int_distribution<int> q(-6, 6);
    for (int i = 0; i < 2000; ++i) {
      int two_q = q(rng);
      if (two_q == 0) two_q = 1;
      const double theta = u(rng), phi = u(rng);
      const Eigen::Vector2d e = field_at(two_q, theta, phi);
      CHECK(std::abs(e.squaredNorm() - 1.0) < 1e-12);
      CHECK((field_at(two_q, theta, phi + pattern_period(two_q)) - e).norm() < 1e-12);
      auto [a, b] = conjugate_fields(two_q, theta, phi);
      CHECK(std::abs(std::remainder(a + b, 2 * pi)) < 1e-12);
    }
  }
}
