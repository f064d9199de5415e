#include "spinorbit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "spinorbit/errors.hpp"
#include "spinorbit/jones.hpp"

namespace spinorbit {
namespace {

struct Term {
  SpinOrbitMode mode;
  Complex coeff;
};

// Expansion of one labelled mode in the requested spin basis.
std::vector<Term> expand(const SpinOrbitMode& mode, bool to_circular) {
  if (is_circular(mode.spin) == to_circular) return {{mode, Complex(1.0)}};
  const int column = (mode.spin == Spin::L || mode.spin == Spin::H) ? 0 : 1;
  const jones::Matrix<double> change =
      to_circular ? jones::linear_to_circular<double>() : jones::circular_to_linear<double>();
  const Spin first = to_circular ? Spin::L : Spin::H;
  const Spin second = to_circular ? Spin::R : Spin::V;
  return {{{first, mode.m}, change(0, column)}, {{second, mode.m}, change(1, column)}};
}

bool all_circular(const PhotonState::Map& amps) {
  return std::all_of(amps.begin(), amps.end(),
                     [](const auto& kv) { return is_circular(kv.first.spin); });
}

bool all_circular(const BiphotonState::Map& amps) {
  return std::all_of(amps.begin(), amps.end(), [](const auto& kv) {
    return is_circular(kv.first.t.spin) && is_circular(kv.first.r.spin);
  });
}

PhotonState change_basis(const PhotonState& s, bool to_circular) {
  PhotonState::Map out;
  for (const auto& [mode, amp] : s.amplitudes()) {
    for (const auto& term : expand(mode, to_circular)) out[term.mode] += amp * term.coeff;
  }
  return PhotonState(std::move(out), s.m_max());
}

template <typename Map>
void prune(Map& amps) {
  std::erase_if(amps, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

void check_window(const SpinOrbitMode& mode, int m_max) {
  if (std::abs(mode.m) > m_max) {
    throw TruncationOverflow("mode " + to_string(mode) + " outside |m| <= " +
                             std::to_string(m_max));
  }
}

}  // namespace

char spin_char(Spin s) {
  switch (s) {
    case Spin::L: return 'L';
    case Spin::R: return 'R';
    case Spin::H: return 'H';
    case Spin::V: return 'V';
  }
  return '?';
}

std::string to_string(const SpinOrbitMode& mode) {
  return std::string("(") + spin_char(mode.spin) + "," + std::to_string(mode.m) + ")";
}

// ---- PhotonState ----

PhotonState::PhotonState(int m_max) : m_max_(m_max) {
  if (m_max < 0) throw InvalidParameter("m_max must be non-negative");
}

PhotonState::PhotonState(Map amplitudes, int m_max)
    : amplitudes_(std::move(amplitudes)), m_max_(m_max) {
  if (m_max < 0) throw InvalidParameter("m_max must be non-negative");
  prune(amplitudes_);
  for (const auto& kv : amplitudes_) check_window(kv.first, m_max_);
}

PhotonState::PhotonState(std::initializer_list<Map::value_type> terms, int m_max)
    : PhotonState(Map(terms), m_max) {}

PhotonState PhotonState::basis(SpinOrbitMode mode, int m_max) {
  return PhotonState(Map{{mode, Complex(1.0)}}, m_max);
}

Complex PhotonState::amplitude(const SpinOrbitMode& mode) const {
  const auto it = amplitudes_.find(mode);
  return it == amplitudes_.end() ? Complex(0.0) : it->second;
}

double PhotonState::squared_norm() const {
  if (!all_circular(amplitudes_)) return to_circular_basis(*this).squared_norm();
  double sum = 0.0;
  for (const auto& kv : amplitudes_) sum += std::norm(kv.second);
  return sum;
}

bool PhotonState::is_normalized() const {
  return std::abs(squared_norm() - 1.0) <= kNormTolerance;
}

PhotonState PhotonState::normalized() const {
  const double n2 = squared_norm();
  if (n2 <= 0.0) throw EmptyProjection("cannot normalize the zero photon state");
  return scaled(Complex(1.0 / std::sqrt(n2)));
}

PhotonState PhotonState::scaled(Complex factor) const {
  Map out = amplitudes_;
  for (auto& kv : out) kv.second *= factor;
  return PhotonState(std::move(out), m_max_);
}

PhotonState operator+(const PhotonState& a, const PhotonState& b) {
  PhotonState::Map out = a.amplitudes();
  for (const auto& [mode, amp] : b.amplitudes()) out[mode] += amp;
  return PhotonState(std::move(out), std::max(a.m_max(), b.m_max()));
}

PhotonState operator*(Complex factor, const PhotonState& s) { return s.scaled(factor); }

// ---- BiphotonState ----

BiphotonState::BiphotonState(int m_max) : m_max_(m_max) {
  if (m_max < 0) throw InvalidParameter("m_max must be non-negative");
}

BiphotonState::BiphotonState(Map amplitudes, int m_max)
    : amplitudes_(std::move(amplitudes)), m_max_(m_max) {
  if (m_max < 0) throw InvalidParameter("m_max must be non-negative");
  prune(amplitudes_);
  for (const auto& kv : amplitudes_) {
    check_window(kv.first.t, m_max_);
    check_window(kv.first.r, m_max_);
  }
}

Complex BiphotonState::amplitude(const SpinOrbitMode& t, const SpinOrbitMode& r) const {
  const auto it = amplitudes_.find(ModePair{t, r});
  return it == amplitudes_.end() ? Complex(0.0) : it->second;
}

double BiphotonState::squared_norm() const {
  if (!all_circular(amplitudes_)) return to_circular_basis(*this).squared_norm();
  double sum = 0.0;
  for (const auto& kv : amplitudes_) sum += std::norm(kv.second);
  return sum;
}

bool BiphotonState::is_normalized() const {
  return std::abs(squared_norm() - 1.0) <= kNormTolerance;
}

BiphotonState BiphotonState::normalized() const {
  const double n2 = squared_norm();
  if (n2 <= 0.0) throw EmptyProjection("cannot normalize the zero biphoton state");
  return scaled(Complex(1.0 / std::sqrt(n2)));
}

BiphotonState BiphotonState::scaled(Complex factor) const {
  Map out = amplitudes_;
  for (auto& kv : out) kv.second *= factor;
  return BiphotonState(std::move(out), m_max_);
}

BiphotonState operator+(const BiphotonState& a, const BiphotonState& b) {
  BiphotonState::Map out = a.amplitudes();
  for (const auto& [pair, amp] : b.amplitudes()) out[pair] += amp;
  return BiphotonState(std::move(out), std::max(a.m_max(), b.m_max()));
}

// ---- algebra ----

Complex inner_product(const PhotonState& a, const PhotonState& b) {
  if (!all_circular(a.amplitudes())) return inner_product(to_circular_basis(a), b);
  if (!all_circular(b.amplitudes())) return inner_product(a, to_circular_basis(b));
  const auto& small = a.size() <= b.size() ? a.amplitudes() : b.amplitudes();
  const auto& large = a.size() <= b.size() ? b.amplitudes() : a.amplitudes();
  const bool a_is_small = a.size() <= b.size();
  Complex sum(0.0);
  for (const auto& [mode, amp] : small) {
    const auto it = large.find(mode);
    if (it == large.end()) continue;
    sum += a_is_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return sum;
}

Complex inner_product(const BiphotonState& a, const BiphotonState& b) {
  if (!all_circular(a.amplitudes())) return inner_product(to_circular_basis(a), b);
  if (!all_circular(b.amplitudes())) return inner_product(a, to_circular_basis(b));
  Complex sum(0.0);
  for (const auto& [pair, amp] : a.amplitudes()) {
    const auto it = b.amplitudes().find(pair);
    if (it != b.amplitudes().end()) sum += std::conj(amp) * it->second;
  }
  return sum;
}

BiphotonState tensor_product(const PhotonState& t, const PhotonState& r) {
  BiphotonState::Map out;
  for (const auto& [kt, at] : t.amplitudes()) {
    for (const auto& [kr, ar] : r.amplitudes()) out.emplace(ModePair{kt, kr}, at * ar);
  }
  return BiphotonState(std::move(out), std::max(t.m_max(), r.m_max()));
}

PhotonState partial_inner(const PhotonState& t_bra, const BiphotonState& joint) {
  const PhotonState bra = to_circular_basis(t_bra);
  const BiphotonState ket = to_circular_basis(joint);
  PhotonState::Map out;
  for (const auto& [pair, amp] : ket.amplitudes()) {
    const Complex overlap = bra.amplitude(pair.t);
    if (overlap != Complex(0.0)) out[pair.r] += std::conj(overlap) * amp;
  }
  return PhotonState(std::move(out), joint.m_max());
}

PhotonState to_linear_basis(const PhotonState& s) {
  return change_basis(to_circular_basis(s), false);
}

PhotonState to_circular_basis(const PhotonState& s) {
  if (all_circular(s.amplitudes())) return s;
  return change_basis(s, true);
}

BiphotonState to_circular_basis(const BiphotonState& s) {
  if (all_circular(s.amplitudes())) return s;
  BiphotonState::Map out;
  for (const auto& [pair, amp] : s.amplitudes()) {
    for (const auto& tt : expand(pair.t, true)) {
      for (const auto& rr : expand(pair.r, true)) {
        out[ModePair{tt.mode, rr.mode}] += amp * tt.coeff * rr.coeff;
      }
    }
  }
  return BiphotonState(std::move(out), s.m_max());
}

double fidelity(const PhotonState& a, const PhotonState& b) {
  const double denom = a.squared_norm() * b.squared_norm();
  if (denom <= 0.0) return 0.0;
  return std::norm(inner_product(a, b)) / denom;
}

double fidelity(const BiphotonState& a, const BiphotonState& b) {
  const double denom = a.squared_norm() * b.squared_norm();
  if (denom <= 0.0) return 0.0;
  return std::norm(inner_product(a, b)) / denom;
}

}  // namespace spinorbit
