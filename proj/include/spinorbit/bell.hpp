#pragma once

// Coincidence fringes, post-selected Bell states and CHSH correlators for a
// pair of conjugate analyzers: the transmitted arm uses (q, theta) and the
// reflected arm (-q, -theta).

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spinorbit/devices.hpp"
#include "spinorbit/hilbert.hpp"

namespace spinorbit {

/// Transmitted-arm configuration; the reflected arm is its conjugate.
struct ArmConfig {
  int two_q = 1;
  double theta = 0.0;
};

/// Four CHSH rotation angles. The barred partner of each angle is
/// beta + pi/(4q), with q signed.
struct ChshSettings {
  double beta_t = 0.0;
  double beta_r = 0.0;
  double beta_t_prime = 0.0;
  double beta_r_prime = 0.0;
  int two_q = 1;
  double theta = 0.0;

  double bar(double beta) const;
};

/// Settings spaced by pi/(16q): (0, pi/16q, pi/8q, 3pi/16q).
ChshSettings standard_chsh_settings(int two_q, double theta = 0.0);

/// Fringe period in beta_t - beta_r: pi/(2|q|).
double fringe_period(int two_q);

enum class Calibration { Raw, Calibrated };

/// Precomputed view of a joint state under conjugate analyzers. With
/// Calibration::Calibrated the transmitted beta origin is shifted by
/// -delta0/(2q) so the fringe peaks at beta_t = beta_r.
class ConjugateArms {
 public:
  ConjugateArms(const BiphotonState& joint, ArmConfig cfg,
                Calibration calibration = Calibration::Calibrated);

  /// |<A_t A_r|joint>|^2, unnormalized.
  double probability(double beta_t, double beta_r) const;
  /// probability / fringe maximum; peak value 1.
  double coincidence(double beta_t, double beta_r) const;
  /// Coincidences at (b_t,b_r), (bar b_t, bar b_r), (b_t, bar b_r), (bar b_t, b_r).
  std::array<double, 4> outcome_weights(double beta_t, double beta_r) const;
  double correlation(double beta_t, double beta_r) const;
  double chsh(const ChshSettings& s) const;

  const ArmConfig& config() const { return cfg_; }
  double offset_delta0() const { return delta0_; }
  double fringe_maximum() const { return maximum_; }

 private:
  double raw_probability(double beta_t, double beta_r) const;

  BiphotonState joint_;
  ArmConfig cfg_;
  double maximum_ = 0.0;
  double delta0_ = 0.0;
  double shift_ = 0.0;
};

/// Normalized reflected-arm state after the transmitted analyzer clicks.
PhotonState collapse_partner(const BiphotonState& joint, const Analyzer& a_t);

/// Raw |<A_t A_r|joint>|^2 for arbitrary analyzers.
double coincidence_probability(const BiphotonState& joint, const Analyzer& a_t,
                               const Analyzer& a_r);

/// Analytic fringe maximum (|a_xi| + |a_eta|)^2 / 4 from the two surviving
/// pair amplitudes selected by a transmitted analyzer of charge 2q.
double fringe_maximum(const BiphotonState& joint, int two_q);

/// Raw probability normalized by fringe_maximum(joint, a_t.two_q).
double coincidence(const BiphotonState& joint, const Analyzer& a_t, const Analyzer& a_r);

/// Projection onto span{|R,+2q>,|L,-2q>}_t x span{|R,-2q>,|L,+2q>}_r, normalized.
BiphotonState postselect_bell(const BiphotonState& joint, int two_q);

/// Singular values of the 2x2 amplitude matrix, descending.
std::array<double, 2> schmidt_coefficients(const BiphotonState& b);

/// Fringe offset delta0 in C = A + B cos(4q Delta + 2 delta0), from a
/// three-point probe of the raw fringe. In (-pi/2, pi/2].
double fringe_offset(const BiphotonState& joint, ArmConfig cfg);

double correlation_E(const BiphotonState& joint, ArmConfig cfg, double beta_t, double beta_r,
                     Calibration calibration = Calibration::Calibrated);

double chsh_S(const BiphotonState& joint, const ChshSettings& s,
              Calibration calibration = Calibration::Calibrated);

struct ChshOptimum {
  ChshSettings settings;
  double S = 0.0;
};

/// Exhaustive grid search at `resolution` followed by golden-section
/// refinement of each angle.
ChshOptimum optimize_chsh(const BiphotonState& joint, int two_q, double resolution = 1e-3);

struct FringeSample {
  double delta = 0.0;
  double value = 0.0;
};

struct FringeFit {
  double visibility = 0.0;
  double offset_delta0 = 0.0;
  double period = 0.0;
  double mean = 0.0;
  double rms_residual = 0.0;
  /// Constant input: visibility 0, offset and period undefined (NaN).
  bool degenerate = false;
};

/// Least-squares fit of A + B cos(omega Delta + 2 delta0), frequency
/// included. visibility = B/A; period = 2 pi / omega.
FringeFit fringe_fit(std::span<const FringeSample> samples);

/// Normalized raw coincidence at beta_t = Delta, beta_r = 0 over Delta in [0, span).
std::vector<FringeSample> fringe_scan(const BiphotonState& joint, ArmConfig cfg, int steps,
                                      double span = std::numbers::pi);

}  // namespace spinorbit
