#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

namespace spinorbit {

/// Unit polarization direction sampled at transverse point (x, y).
struct FieldSample {
  double x = 0.0;
  double y = 0.0;
  double ex = 0.0;
  double ey = 0.0;
};

/// Local linear polarization direction, pointing at angle 2q phi - theta.
Eigen::Vector2d field_at(int two_q, double theta, double phi);

/// Polar grid: ring k at radius (k+1)/rings, points at phi_j = 2 pi j / points.
std::vector<FieldSample> sample_field(int two_q, double theta, int rings, int points_per_ring);

/// Rotational period of the pattern, pi/|q|.
double pattern_period(int two_q);

/// Direction angles of (q, theta) and (-q, -theta) at the same phi, each
/// wrapped into (-pi, pi].
std::pair<double, double> conjugate_fields(int two_q, double theta, double phi);

}  // namespace spinorbit
