#pragma once

// Sparse state vectors over single-photon spin-orbit modes |spin, m> and
// over two-photon pairs (transmitted arm t, reflected arm r).

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

namespace spinorbit {

using Complex = std::complex<double>;

inline constexpr int kDefaultMmax = 8;
inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kNormTolerance = 1e-12;

/// Circular labels L, R and the linear view H, V.
enum class Spin : std::uint8_t { L, R, H, V };

constexpr bool is_circular(Spin s) { return s == Spin::L || s == Spin::R; }
char spin_char(Spin s);

struct SpinOrbitMode {
  Spin spin = Spin::L;
  int m = 0;

  friend auto operator<=>(const SpinOrbitMode&, const SpinOrbitMode&) = default;
};

std::string to_string(const SpinOrbitMode& mode);

struct ModePair {
  SpinOrbitMode t;
  SpinOrbitMode r;

  friend auto operator<=>(const ModePair&, const ModePair&) = default;
};

/// Immutable single-photon state. Amplitudes with magnitude below
/// kPruneThreshold are dropped at construction; every stored mode obeys
/// |m| <= m_max.
class PhotonState {
 public:
  using Map = std::map<SpinOrbitMode, Complex>;

  explicit PhotonState(int m_max = kDefaultMmax);
  PhotonState(Map amplitudes, int m_max = kDefaultMmax);
  PhotonState(std::initializer_list<Map::value_type> terms, int m_max = kDefaultMmax);

  static PhotonState basis(SpinOrbitMode mode, int m_max = kDefaultMmax);

  const Map& amplitudes() const { return amplitudes_; }
  Complex amplitude(const SpinOrbitMode& mode) const;
  int m_max() const { return m_max_; }
  std::size_t size() const { return amplitudes_.size(); }
  bool empty() const { return amplitudes_.empty(); }

  double squared_norm() const;
  bool is_normalized() const;

  /// Throws EmptyProjection for the zero vector.
  PhotonState normalized() const;
  PhotonState scaled(Complex factor) const;

 private:
  Map amplitudes_;
  int m_max_;
};

PhotonState operator+(const PhotonState& a, const PhotonState& b);
PhotonState operator*(Complex factor, const PhotonState& s);

/// Immutable two-photon state keyed by (t-mode, r-mode). Arms are positional.
class BiphotonState {
 public:
  using Map = std::map<ModePair, Complex>;

  explicit BiphotonState(int m_max = kDefaultMmax);
  BiphotonState(Map amplitudes, int m_max = kDefaultMmax);

  const Map& amplitudes() const { return amplitudes_; }
  Complex amplitude(const SpinOrbitMode& t, const SpinOrbitMode& r) const;
  int m_max() const { return m_max_; }
  std::size_t size() const { return amplitudes_.size(); }
  bool empty() const { return amplitudes_.empty(); }

  double squared_norm() const;
  bool is_normalized() const;
  BiphotonState normalized() const;
  BiphotonState scaled(Complex factor) const;

 private:
  Map amplitudes_;
  int m_max_;
};

BiphotonState operator+(const BiphotonState& a, const BiphotonState& b);

/// <a|b>. States may mix circular and linear labels; both are expanded in
/// the circular basis first.
Complex inner_product(const PhotonState& a, const PhotonState& b);
Complex inner_product(const BiphotonState& a, const BiphotonState& b);

BiphotonState tensor_product(const PhotonState& t, const PhotonState& r);

/// sum conj(t_bra[k_t]) * joint[(k_t, k_r)] |k_r>, unnormalized.
PhotonState partial_inner(const PhotonState& t_bra, const BiphotonState& joint);

PhotonState to_linear_basis(const PhotonState& s);
PhotonState to_circular_basis(const PhotonState& s);
BiphotonState to_circular_basis(const BiphotonState& s);

/// |<a|b>|^2 / (<a|a><b|b>); insensitive to global phase.
double fidelity(const PhotonState& a, const PhotonState& b);
double fidelity(const BiphotonState& a, const BiphotonState& b);

}  // namespace spinorbit
