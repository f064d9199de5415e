#include "spinorbit/devices.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {

QPlate::QPlate(int two_q) : two_q_(two_q) {
  if (two_q == 0) throw InvalidParameter("q-plate charge must be nonzero");
}

PhotonState qplate_apply(const QPlate& plate, const PhotonState& s) {
  const PhotonState in = to_circular_basis(s);
  PhotonState::Map out;
  for (const auto& [mode, amp] : in.amplitudes()) {
    const bool left = mode.spin == Spin::L;
    const SpinOrbitMode shifted{left ? Spin::R : Spin::L,
                                left ? mode.m + plate.two_q() : mode.m - plate.two_q()};
    if (std::abs(shifted.m) > in.m_max()) {
      throw TruncationOverflow("q-plate 2q=" + std::to_string(plate.two_q()) + " maps " +
                               to_string(mode) + " outside |m| <= " +
                               std::to_string(in.m_max()));
    }
    out[shifted] += amp;
  }
  return PhotonState(std::move(out), in.m_max());
}

PhotonState apply_jones(const jones::Matrix<double>& op, const PhotonState& s) {
  const PhotonState in = to_circular_basis(s);
  std::map<int, jones::Vector<double>> slices;
  for (const auto& [mode, amp] : in.amplitudes()) {
    auto [it, inserted] = slices.try_emplace(mode.m, jones::Vector<double>::Zero());
    it->second(mode.spin == Spin::L ? 0 : 1) = amp;
  }
  PhotonState::Map out;
  for (const auto& [m, v] : slices) {
    const jones::Vector<double> w = op * v;
    out[{Spin::L, m}] = w(0);
    out[{Spin::R, m}] = w(1);
  }
  return PhotonState(std::move(out), in.m_max());
}

PhotonState hwp_apply(double alpha, const PhotonState& s) {
  return apply_jones(jones::half_wave_plate(alpha), s);
}

PhotonState polarizer_project(double axis, const PhotonState& s) {
  return apply_jones(jones::linear_polarizer(axis), s);
}

PhotonState linear_state(double angle, int m, int m_max) {
  const jones::Vector<double> v = jones::linear_polarization(angle);
  return PhotonState({{{Spin::L, m}, v(0)}, {{Spin::R, m}, v(1)}}, m_max);
}

PhotonState analyzer_state(const Analyzer& a, int m_max) {
  if (std::abs(a.two_q) > m_max) {
    throw TruncationOverflow("analyzer 2q=" + std::to_string(a.two_q) +
                             " exceeds m_max=" + std::to_string(m_max));
  }
  const double phase = a.two_q * a.beta + a.theta;
  const double s = 1.0 / std::sqrt(2.0);
  return PhotonState({{{Spin::R, a.two_q}, std::polar(s, -phase)},
                      {{Spin::L, -a.two_q}, std::polar(s, phase)}},
                     m_max);
}

PhotonState analyzer_state_chain(int two_q, double theta, int m_max) {
  const QPlate plate(two_q);
  const PhotonState fiber_mode = PhotonState::basis({Spin::H, 0}, m_max);
  return qplate_apply(plate, hwp_apply(0.5 * theta, fiber_mode)).normalized();
}

}  // namespace spinorbit
