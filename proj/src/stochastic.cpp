#include "spinorbit/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spinorbit/errors.hpp"

namespace spinorbit {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index + 1) * 0xd1b54a32d192ed03ULL);
}

Counts sample_counts(const std::array<double, 4>& probabilities, std::uint64_t n,
                     std::uint64_t seed) {
  double total = 0.0;
  for (const double p : probabilities) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidParameter("probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidParameter("probabilities must sum to 1");

  std::mt19937_64 rng(splitmix64(seed));
  Counts counts{};
  std::uint64_t remaining = n;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < counts.size() && remaining > 0; ++i) {
    const double p = mass > 0.0 ? std::clamp(probabilities[i] / mass, 0.0, 1.0) : 0.0;
    if (p >= 1.0) {
      counts[i] = remaining;
    } else if (p > 0.0) {
      std::binomial_distribution<std::uint64_t> draw(remaining, p);
      counts[i] = draw(rng);
    }
    remaining -= counts[i];
    mass -= probabilities[i];
  }
  counts.back() += remaining;
  return counts;
}

double correlator_from_counts(const Counts& c) {
  const double total = static_cast<double>(c[0] + c[1] + c[2] + c[3]);
  if (!(total > 0.0)) throw ZeroDenominator("no counts for this setting pair");
  return (static_cast<double>(c[0]) + static_cast<double>(c[1]) - static_cast<double>(c[2]) -
          static_cast<double>(c[3])) /
         total;
}

SEstimate estimate_S(const BiphotonState& joint, const ChshSettings& s, std::uint64_t n,
                     std::uint64_t seed) {
  if (n < 4) throw InvalidParameter("need at least 4 pairs per setting");
  const ConjugateArms arms(joint, {s.two_q, s.theta});
  const std::array<std::pair<double, double>, 4> pairs{{{s.beta_t, s.beta_r},
                                                        {s.beta_t, s.beta_r_prime},
                                                        {s.beta_t_prime, s.beta_r},
                                                        {s.beta_t_prime, s.beta_r_prime}}};
  constexpr std::array<double, 4> sign{1.0, -1.0, 1.0, 1.0};

  SEstimate est;
  est.table.pairs_per_setting = n;
  est.table.seed = seed;
  double variance = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto w = arms.outcome_weights(pairs[i].first, pairs[i].second);
    const double total = w[0] + w[1] + w[2] + w[3];
    if (!(total > 1e-300)) throw ZeroDenominator("setting pair has vanishing total probability");
    for (double& p : w) p /= total;
    est.table.counts[i] = sample_counts(w, n, stream_seed(seed, i));
    const double e = correlator_from_counts(est.table.counts[i]);
    est.e_hat[i] = e;
    est.s_hat += sign[i] * e;
    variance += (1.0 - e * e) / static_cast<double>(n);
  }
  est.stderr_s = std::sqrt(variance);
  return est;
}

}  // namespace spinorbit
