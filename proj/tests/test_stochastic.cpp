#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spinorbit/errors.hpp"
#include "spinorbit/source.hpp"
#include "spinorbit/stochastic.hpp"

using namespace spinorbit;

namespace {
const double kTsirelson = 2.0 * std::sqrt(2.0);

BiphotonState flat() { return hyper_state(make_spectrum(SpectrumShape::Flat, 8)); }
}  // namespace

TEST_SUITE("stochastic") {
  TEST_CASE("multinomial edge cases") {
    CHECK(sample_counts({0.25, 0.25, 0.25, 0.25}, 0, 1) == Counts{0, 0, 0, 0});
    CHECK(sample_counts({1.0, 0.0, 0.0, 0.0}, 100, 1) == Counts{100, 0, 0, 0});
    CHECK(sample_counts({0.0, 0.0, 0.0, 1.0}, 100, 9) == Counts{0, 0, 0, 100});
    const Counts c = sample_counts({0.1, 0.2, 0.3, 0.4}, 12345, 3);
    CHECK(std::accumulate(c.begin(), c.end(), std::uint64_t{0}) == 12345);
  }

  TEST_CASE("invalid probabilities") {
    CHECK_THROWS_AS(sample_counts({0.5, 0.5, 0.5, 0.0}, 10, 1), InvalidParameter);
    CHECK_THROWS_AS(sample_counts({-0.1, 0.6, 0.5, 0.0}, 10, 1), InvalidParameter);
    CHECK_THROWS_AS(sample_counts({NAN, 0.5, 0.5, 0.0}, 10, 1), InvalidParameter);
  }

  TEST_CASE("draws are deterministic in the seed") {
    const std::array<double, 4> p{0.1, 0.4, 0.2, 0.3};
    CHECK(sample_counts(p, 100000, 42) == sample_counts(p, 100000, 42));
    CHECK(sample_counts(p, 100000, 42) != sample_counts(p, 100000, 43));
    CHECK(stream_seed(42, 0) != stream_seed(42, 1));
  }

  TEST_CASE("multinomial frequencies approach the probabilities") {
    const std::array<double, 4> p{0.1, 0.4, 0.2, 0.3};
    const std::uint64_t n = 1000000;
    const Counts c = sample_counts(p, n, 5);
    for (std::size_t i = 0; i < 4; ++i) {
      const double sd = std::sqrt(p[i] * (1 - p[i]) / n);
      CHECK(std::abs(static_cast<double>(c[i]) / n - p[i]) < 5 * sd);
    }
  }

  TEST_CASE("estimate at large N sits near 2 sqrt 2") {
    const ChshSettings s = standard_chsh_settings(2);
    const SEstimate est = estimate_S(flat(), s, 1000000, 42);
    CHECK(std::abs(est.s_hat - kTsirelson) < 5 * est.stderr_s);
    for (const auto& c : est.table.counts) CHECK(std::accumulate(c.begin(), c.end(), std::uint64_t{0}) == 1000000);
  }

  TEST_CASE("estimate is reproducible and validates N") {
    const ChshSettings s = standard_chsh_settings(1);
    const SEstimate a = estimate_S(flat(), s, 5000, 7);
    const SEstimate b = estimate_S(flat(), s, 5000, 7);
    CHECK(a.s_hat == b.s_hat);
    CHECK(a.table.counts == b.table.counts);
    CHECK_THROWS_AS(estimate_S(flat(), s, 3, 7), InvalidParameter);
  }

  TEST_CASE("standard error scales as N^-1/2") {
    const ChshSettings s = standard_chsh_settings(2);
    const double e3 = estimate_S(flat(), s, 1000, 1).stderr_s;
    const double e5 = estimate_S(flat(), s, 100000, 1).stderr_s;
    CHECK(e3 / e5 > 10.0 / 1.5);
    CHECK(e3 / e5 < 10.0 * 1.5);
  }

  TEST_CASE("visibility-limited spectrum concentrates near 2 sqrt2 V") {
    const BiphotonState joint = hyper_state(make_pair_spectrum(2, 0.5, 1.0));
    const SEstimate est = estimate_S(joint, standard_chsh_settings(2), 200000, 11);
    CHECK(std::abs(est.s_hat - kTsirelson * 0.8) < 5 * est.stderr_s);
  }

  TEST_CASE("property: unbiased over many seeds") {
    const ChshSettings s = standard_chsh_settings(1);
    const BiphotonState joint = flat();
    const double exact = chsh_S(joint, s);
    double sum = 0.0, var = 0.0;
    const int runs = 200;
    for (int seed = 0; seed < runs; ++seed) {
      const SEstimate est = estimate_S(joint, s, 10000, static_cast<std::uint64_t>(seed));
      sum += est.s_hat;
      var += est.stderr_s * est.stderr_s;
    }
    const double mean = sum / runs;
    const double combined = std::sqrt(var) / runs;
    CHECK(std::abs(mean - exact) < 3 * combined);
  }
}
