#pragma once

#include <map>
#include <string>

#include "spinorbit/hilbert.hpp"

namespace spinorbit {

enum class SpectrumShape { Flat, Gaussian, Custom };

std::string to_string(SpectrumShape shape);

/// OAM coefficients C_m over |m| <= m_max, normalized so sum |C_m|^2 = 1.
class OamSpectrum {
 public:
  /// Normalizes the given coefficients; throws InvalidParameter if they
  /// are all zero or fall outside the window.
  OamSpectrum(int m_max, std::map<int, Complex> coefficients,
              SpectrumShape shape = SpectrumShape::Custom, double sigma = 0.0);

  int m_max() const { return m_max_; }
  const std::map<int, Complex>& coefficients() const { return coefficients_; }
  Complex coefficient(int m) const;
  SpectrumShape shape() const { return shape_; }
  double sigma() const { return sigma_; }

 private:
  int m_max_;
  std::map<int, Complex> coefficients_;
  SpectrumShape shape_;
  double sigma_;
};

/// flat: C_m = 1/sqrt(2 m_max + 1); gaussian: C_m ~ exp(-m^2 / (2 sigma^2)).
OamSpectrum make_spectrum(SpectrumShape shape, int m_max, double sigma = 2.0);

/// Two-sided spectrum that is zero except C_{+m} = c_plus, C_{-m} = c_minus
/// (normalized). Used to study fringe visibility below one.
OamSpectrum make_pair_spectrum(int m, double c_plus, double c_minus, int m_max = kDefaultMmax);

/// (|H>_t|V>_r + |V>_t|H>_r)/sqrt(2) on m = 0, stored in the circular basis.
BiphotonState spin_bell_state(int m_max = kDefaultMmax);

/// Spin Bell state times sum_m C_m |m>_t |-m>_r.
BiphotonState hyper_state(const OamSpectrum& spectrum);

}  // namespace spinorbit
