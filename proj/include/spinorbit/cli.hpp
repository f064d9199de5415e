#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "spinorbit/bell.hpp"
#include "spinorbit/source.hpp"

namespace spinorbit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArguments = 2;
inline constexpr int kExitNumericFailure = 3;

struct RunConfig {
  std::string subcommand;
  std::string q_text = "1";
  int two_q = 2;
  std::string theta_text = "0";
  double theta = 0.0;
  std::string spectrum = "flat";
  int m_max = kDefaultMmax;
  double sigma = 2.0;
  int rings = 8;
  int points = 64;
  int steps = 360;
  bool optimize = false;
  double resolution = 1e-3;
  std::string settings_text;
  std::int64_t pairs = 100000;
  std::uint64_t seed = 1;
  std::string out;
};

/// "n/2" or an integer n, returned as the integer 2q. Throws InvalidParameter.
int parse_two_q(std::string_view text);

/// Canonical text of q for a given 2q: "3/2", "-1", ...
std::string format_q(int two_q);

/// Radians as a plain number or a multiple of pi: "0.3", "pi/4", "-3pi/16".
double parse_angle(std::string_view text);

/// Four comma-separated angles.
ChshSettings parse_settings(std::string_view text, int two_q, double theta);

/// 17 significant digits, as used in every CSV cell.
std::string format_double(double v);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinorbit::cli
