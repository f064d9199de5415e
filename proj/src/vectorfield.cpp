#include "spinorbit/vectorfield.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "spinorbit/errors.hpp"

namespace spinorbit {
namespace {

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

void require_charge(int two_q) {
  if (two_q == 0) throw InvalidParameter("q must be nonzero");
}

}  // namespace

Eigen::Vector2d field_at(int two_q, double theta, double phi) {
  require_charge(two_q);
  const double angle = two_q * phi - theta;
  return {std::cos(angle), std::sin(angle)};
}

std::vector<FieldSample> sample_field(int two_q, double theta, int rings, int points_per_ring) {
  require_charge(two_q);
  if (rings < 1) throw InvalidParameter("rings must be >= 1");
  if (points_per_ring < 4) throw InvalidParameter("points per ring must be >= 4");
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(rings) * static_cast<std::size_t>(points_per_ring));
  for (int k = 0; k < rings; ++k) {
    const double radius = static_cast<double>(k + 1) / rings;
    for (int j = 0; j < points_per_ring; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / points_per_ring;
      const Eigen::Vector2d e = field_at(two_q, theta, phi);
      out.push_back({radius * std::cos(phi), radius * std::sin(phi), e.x(), e.y()});
    }
  }
  return out;
}

double pattern_period(int two_q) {
  require_charge(two_q);
  return 2.0 * std::numbers::pi / std::abs(two_q);
}

std::pair<double, double> conjugate_fields(int two_q, double theta, double phi) {
  require_charge(two_q);
  return {wrap_angle(two_q * phi - theta), wrap_angle(-two_q * phi + theta)};
}

}  // namespace spinorbit
