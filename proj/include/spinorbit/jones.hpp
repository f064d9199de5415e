#pragma once

// Jones calculus in the circular basis. Component 0 is |L>, component 1 is |R>.
// A theta-linear polarization is (e^{-i theta}|L> + e^{i theta}|R>)/sqrt(2),
// so |H> = (|L>+|R>)/sqrt(2) and |V> = i(|R>-|L>)/sqrt(2).

#include <cmath>
#include <complex>

#include <Eigen/Core>

namespace spinorbit::jones {

template <typename Scalar>
using Vector = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
Vector<Scalar> linear_polarization(Scalar angle) {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  Vector<Scalar> v;
  v << std::polar(s, -angle), std::polar(s, angle);
  return v;
}

/// Maps circular components (a_L, a_R) onto linear components (a_H, a_V).
template <typename Scalar>
Matrix<Scalar> circular_to_linear() {
  using C = std::complex<Scalar>;
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  Matrix<Scalar> m;
  m << C(s, 0), C(s, 0), C(0, s), C(0, -s);
  return m;
}

template <typename Scalar>
Matrix<Scalar> linear_to_circular() {
  return circular_to_linear<Scalar>().adjoint();
}

/// Half-wave plate with fast axis at `alpha`, global phase dropped:
/// |L> -> e^{2i alpha}|R>, |R> -> e^{-2i alpha}|L>.
template <typename Scalar>
Matrix<Scalar> half_wave_plate(Scalar alpha) {
  using C = std::complex<Scalar>;
  Matrix<Scalar> m;
  m << C(0), std::polar(Scalar(1), -2 * alpha), std::polar(Scalar(1), 2 * alpha), C(0);
  return m;
}

/// Rank-one projector onto the linear polarization at `axis`.
template <typename Scalar>
Matrix<Scalar> linear_polarizer(Scalar axis) {
  const Vector<Scalar> v = linear_polarization(axis);
  return v * v.adjoint();
}

}  // namespace spinorbit::jones
