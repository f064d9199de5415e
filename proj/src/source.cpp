#include "spinorbit/source.hpp"

#include <cmath>
#include <cstdlib>

#include "spinorbit/errors.hpp"

namespace spinorbit {

std::string to_string(SpectrumShape shape) {
  switch (shape) {
    case SpectrumShape::Flat: return "flat";
    case SpectrumShape::Gaussian: return "gaussian";
    case SpectrumShape::Custom: return "custom";
  }
  return "unknown";
}

OamSpectrum::OamSpectrum(int m_max, std::map<int, Complex> coefficients, SpectrumShape shape,
                         double sigma)
    : m_max_(m_max), coefficients_(std::move(coefficients)), shape_(shape), sigma_(sigma) {
  if (m_max < 0) throw InvalidParameter("spectrum m_max must be non-negative");
  double total = 0.0;
  for (const auto& [m, c] : coefficients_) {
    if (std::abs(m) > m_max) {
      throw InvalidParameter("spectrum coefficient at m=" + std::to_string(m) +
                             " outside |m| <= " + std::to_string(m_max));
    }
    total += std::norm(c);
  }
  if (total <= 0.0) throw InvalidParameter("spectrum has no weight");
  const double scale = 1.0 / std::sqrt(total);
  for (auto& kv : coefficients_) kv.second *= scale;
}

Complex OamSpectrum::coefficient(int m) const {
  const auto it = coefficients_.find(m);
  return it == coefficients_.end() ? Complex(0.0) : it->second;
}

OamSpectrum make_spectrum(SpectrumShape shape, int m_max, double sigma) {
  if (m_max < 1) throw InvalidParameter("spectrum m_max must be >= 1");
  std::map<int, Complex> c;
  switch (shape) {
    case SpectrumShape::Flat:
      for (int m = -m_max; m <= m_max; ++m) c[m] = 1.0;
      break;
    case SpectrumShape::Gaussian:
      if (!(sigma > 0.0)) throw InvalidParameter("gaussian spectrum needs sigma > 0");
      for (int m = -m_max; m <= m_max; ++m) c[m] = std::exp(-double(m) * m / (2.0 * sigma * sigma));
      break;
    case SpectrumShape::Custom:
      throw InvalidParameter("custom spectra are built from explicit coefficients");
  }
  return OamSpectrum(m_max, std::move(c), shape, shape == SpectrumShape::Gaussian ? sigma : 0.0);
}

OamSpectrum make_pair_spectrum(int m, double c_plus, double c_minus, int m_max) {
  if (m == 0) throw InvalidParameter("pair spectrum needs m != 0");
  return OamSpectrum(m_max, {{m, c_plus}, {-m, c_minus}});
}

BiphotonState spin_bell_state(int m_max) {
  // (|HV> + |VH>)/sqrt(2) = i(|RR> - |LL>)/sqrt(2)
  const double s = 1.0 / std::sqrt(2.0);
  return BiphotonState({{ModePair{{Spin::R, 0}, {Spin::R, 0}}, Complex(0.0, s)},
                        {ModePair{{Spin::L, 0}, {Spin::L, 0}}, Complex(0.0, -s)}},
                       m_max);
}

BiphotonState hyper_state(const OamSpectrum& spectrum) {
  const BiphotonState spin = spin_bell_state(spectrum.m_max());
  BiphotonState::Map out;
  for (const auto& [pair, a] : spin.amplitudes()) {
    for (const auto& [m, c] : spectrum.coefficients()) {
      out[ModePair{{pair.t.spin, m}, {pair.r.spin, -m}}] = a * c;
    }
  }
  return BiphotonState(std::move(out), spectrum.m_max());
}

}  // namespace spinorbit
