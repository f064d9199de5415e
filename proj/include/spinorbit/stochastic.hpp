#pragma once

// Finite-statistics emulation of a CHSH counting run. Each of the four
// setting pairs gets N detected pairs, distributed multinomially over the
// four (beta / beta-bar) analyzer combinations that enter the correlator.

#include <array>
#include <cstdint>

#include "spinorbit/bell.hpp"
#include "spinorbit/hilbert.hpp"

namespace spinorbit {

using Counts = std::array<std::uint64_t, 4>;

/// Seed of the independent stream used for setting pair `index`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Multinomial draw of n trials; deterministic in `seed`.
Counts sample_counts(const std::array<double, 4>& probabilities, std::uint64_t n,
                     std::uint64_t seed);

struct CountTable {
  /// Pairs in CHSH order: (b_t,b_r), (b_t,b_r'), (b_t',b_r), (b_t',b_r').
  std::array<Counts, 4> counts{};
  std::uint64_t pairs_per_setting = 0;
  std::uint64_t seed = 0;
};

struct SEstimate {
  double s_hat = 0.0;
  double stderr_s = 0.0;
  std::array<double, 4> e_hat{};
  CountTable table;
};

/// Correlator from the four outcome counts: (n0 + n1 - n2 - n3) / N.
double correlator_from_counts(const Counts& c);

SEstimate estimate_S(const BiphotonState& joint, const ChshSettings& s, std::uint64_t n,
                     std::uint64_t seed);

}  // namespace spinorbit
