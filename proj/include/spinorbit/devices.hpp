#pragma once

#include "spinorbit/hilbert.hpp"
#include "spinorbit/jones.hpp"

namespace spinorbit {

/// q-plate of topological charge q, stored as the integer 2q so that
/// half-integer charges stay exact.
class QPlate {
 public:
  explicit QPlate(int two_q);
  int two_q() const { return two_q_; }
  double q() const { return 0.5 * two_q_; }

 private:
  int two_q_;
};

/// One measurement arm: q-plate charge, waveplate-derived angle theta and
/// apparatus rotation beta (radians).
struct Analyzer {
  int two_q = 1;
  double theta = 0.0;
  double beta = 0.0;
};

/// |L,m> -> |R,m+2q>, |R,m> -> |L,m-2q>.
PhotonState qplate_apply(const QPlate& plate, const PhotonState& s);

/// Half-wave plate with fast axis at `alpha`; OAM untouched.
PhotonState hwp_apply(double alpha, const PhotonState& s);

/// Projects the spin part onto linear polarization at `axis`; unnormalized.
PhotonState polarizer_project(double axis, const PhotonState& s);

/// Applies a 2x2 circular-basis Jones matrix to the spin part of every OAM slice.
PhotonState apply_jones(const jones::Matrix<double>& op, const PhotonState& s);

/// Single-mode linear polarization at `angle` carrying OAM `m`.
PhotonState linear_state(double angle, int m = 0, int m_max = kDefaultMmax);

/// Closed-form detected state of a rotated analyzer:
/// (e^{-i(2q beta + theta)}|R,+2q> + e^{i(2q beta + theta)}|L,-2q>)/sqrt(2).
PhotonState analyzer_state(const Analyzer& a, int m_max = kDefaultMmax);

/// Detected state rebuilt from the device chain: |H,0> back through the
/// half-wave plate at theta/2 and then the q-plate.
PhotonState analyzer_state_chain(int two_q, double theta, int m_max = kDefaultMmax);

}  // namespace spinorbit
