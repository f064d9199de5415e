#include "spinorbit/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <regex>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinorbit/errors.hpp"
#include "spinorbit/stochastic.hpp"
#include "spinorbit/vectorfield.hpp"

namespace spinorbit::cli {
namespace {

using Json = nlohmann::ordered_json;

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InvalidParameter("not a number: '" + std::string(text) + "'");
  }
  return v;
}

SpectrumShape parse_shape(const std::string& text) {
  if (text == "flat") return SpectrumShape::Flat;
  if (text == "gaussian") return SpectrumShape::Gaussian;
  throw InvalidParameter("--spectrum must be flat or gaussian");
}

void validate(RunConfig& cfg) {
  cfg.two_q = parse_two_q(cfg.q_text);
  cfg.theta = parse_angle(cfg.theta_text);
  parse_shape(cfg.spectrum);
  if (cfg.m_max < 1) throw InvalidParameter("--mmax must be >= 1");
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) throw InvalidParameter("--sigma must be > 0");
  if (cfg.subcommand == "field") {
    if (cfg.rings < 1) throw InvalidParameter("--rings must be >= 1");
    if (cfg.points < 4) throw InvalidParameter("--points must be >= 4");
  }
  if (cfg.subcommand == "fringe" && cfg.steps < 8) {
    throw InvalidParameter("--steps must be >= 8");
  }
  if (!(cfg.resolution > 0.0) || !std::isfinite(cfg.resolution)) {
    throw InvalidParameter("--resolution must be > 0");
  }
  if (cfg.subcommand == "sample" && cfg.pairs < 4) throw InvalidParameter("--pairs must be >= 4");
  if (!cfg.settings_text.empty() && cfg.settings_text != "auto" &&
      cfg.settings_text != "standard") {
    parse_settings(cfg.settings_text, cfg.two_q, cfg.theta);
  }
}

OamSpectrum spectrum_of(const RunConfig& cfg) {
  return make_spectrum(parse_shape(cfg.spectrum), cfg.m_max, cfg.sigma);
}

Json spectrum_json(const RunConfig& cfg) {
  Json j;
  j["shape"] = cfg.spectrum;
  j["m_max"] = cfg.m_max;
  if (cfg.spectrum == "gaussian") j["sigma"] = cfg.sigma;
  return j;
}

Json settings_json(const ChshSettings& s) {
  Json j;
  j["beta_t"] = s.beta_t;
  j["beta_r"] = s.beta_r;
  j["beta_t_prime"] = s.beta_t_prime;
  j["beta_r_prime"] = s.beta_r_prime;
  return j;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + cfg.out + "'");
}

std::string run_field(const RunConfig& cfg) {
  std::string csv = "x,y,ex,ey\n";
  for (const auto& s : sample_field(cfg.two_q, cfg.theta, cfg.rings, cfg.points)) {
    csv += format_double(s.x) + ',' + format_double(s.y) + ',' + format_double(s.ex) + ',' +
           format_double(s.ey) + '\n';
  }
  return csv;
}

std::string run_fringe(const RunConfig& cfg) {
  const BiphotonState joint = hyper_state(spectrum_of(cfg));
  const ConjugateArms arms(joint, {cfg.two_q, cfg.theta}, Calibration::Raw);
  std::string csv = "delta,coincidence,probability\n";
  for (int k = 0; k < cfg.steps; ++k) {
    const double delta = std::numbers::pi * k / cfg.steps;
    csv += format_double(delta) + ',' + format_double(arms.coincidence(delta, 0.0)) + ',' +
           format_double(arms.probability(delta, 0.0)) + '\n';
  }
  return csv;
}

Json bell_summary(const RunConfig& cfg, const BiphotonState& joint, const ChshSettings& s,
                  double S) {
  const auto samples = fringe_scan(joint, {cfg.two_q, cfg.theta}, 360);
  const FringeFit fit = fringe_fit(samples);
  Json j;
  j["command"] = cfg.subcommand;
  j["q"] = format_q(cfg.two_q);
  j["two_q"] = cfg.two_q;
  j["theta"] = cfg.theta;
  j["spectrum"] = spectrum_json(cfg);
  j["settings"] = settings_json(s);
  j["S"] = S;
  j["visibility"] = fit.visibility;
  j["offset_delta0"] = fit.offset_delta0;
  j["fringe_period"] = fit.period;
  return j;
}

ChshSettings choose_settings(const RunConfig& cfg, const BiphotonState& joint, bool optimize) {
  if (optimize) {
    ChshSettings s = optimize_chsh(joint, cfg.two_q, cfg.resolution).settings;
    s.theta = cfg.theta;
    return s;
  }
  if (cfg.settings_text.empty() || cfg.settings_text == "standard") {
    return standard_chsh_settings(cfg.two_q, cfg.theta);
  }
  return parse_settings(cfg.settings_text, cfg.two_q, cfg.theta);
}

std::string run_chsh(const RunConfig& cfg) {
  const BiphotonState joint = hyper_state(spectrum_of(cfg));
  const bool optimize = cfg.optimize || cfg.settings_text == "auto";
  const ChshSettings s = choose_settings(cfg, joint, optimize);
  const double S = chsh_S(joint, s);
  Json j = bell_summary(cfg, joint, s, S);
  j["optimized"] = optimize;
  return j.dump(2) + '\n';
}

std::string run_sample(const RunConfig& cfg) {
  const BiphotonState joint = hyper_state(spectrum_of(cfg));
  const bool optimize = cfg.settings_text.empty() || cfg.settings_text == "auto";
  const ChshSettings s = choose_settings(cfg, joint, optimize);
  const double S = chsh_S(joint, s);
  const SEstimate est = estimate_S(joint, s, static_cast<std::uint64_t>(cfg.pairs), cfg.seed);
  Json j = bell_summary(cfg, joint, s, S);
  j["pairs"] = cfg.pairs;
  j["seed"] = cfg.seed;
  j["s_hat"] = est.s_hat;
  j["stderr"] = est.stderr_s;
  j["e_hat"] = est.e_hat;
  Json counts = Json::array();
  for (const auto& c : est.table.counts) counts.push_back(c);
  j["counts"] = counts;
  return j.dump(2) + '\n';
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--q", cfg.q_text, "q-plate charge: integer or n/2")->required();
  sub->add_option("--theta", cfg.theta_text, "waveplate angle theta (radians, may use pi)");
  sub->add_option("--spectrum", cfg.spectrum, "OAM spectrum: flat|gaussian");
  sub->add_option("--mmax", cfg.m_max, "OAM truncation |m| <= mmax");
  sub->add_option("--sigma", cfg.sigma, "gaussian spectrum width");
  sub->add_option("--out", cfg.out, "output file (default: stdout)");
}

}  // namespace

int parse_two_q(std::string_view text) {
  static const std::regex pattern(R"(^([+-]?[0-9]+)(/2)?$)");
  const std::string s(text);
  std::smatch match;
  if (!std::regex_match(s, match, pattern)) {
    throw InvalidParameter("q must be an integer or n/2, got '" + s + "'");
  }
  long long n = 0;
  try {
    n = std::stoll(match[1].str());
  } catch (const std::exception&) {
    throw InvalidParameter("q out of range: '" + s + "'");
  }
  const long long two_q = match[2].matched ? n : 2 * n;
  if (two_q == 0) throw InvalidParameter("q must be nonzero");
  if (std::llabs(two_q) > 1000000) throw InvalidParameter("q out of range: '" + s + "'");
  return static_cast<int>(two_q);
}

std::string format_q(int two_q) {
  if (two_q % 2 == 0) return std::to_string(two_q / 2);
  return std::to_string(two_q) + "/2";
}

double parse_angle(std::string_view text) {
  const std::string s(text);
  static const std::regex pi_form(R"(^([+-]?)([0-9]*\.?[0-9]*)\*?pi(/([0-9]+(\.[0-9]*)?))?$)");
  std::smatch match;
  if (std::regex_match(s, match, pi_form)) {
    double value = std::numbers::pi;
    if (match[2].length() > 0) value *= parse_number(match[2].str());
    if (match[4].matched) {
      const double den = parse_number(match[4].str());
      if (den == 0.0) throw InvalidParameter("zero denominator in angle '" + s + "'");
      value /= den;
    }
    return match[1].str() == "-" ? -value : value;
  }
  return parse_number(text);
}

ChshSettings parse_settings(std::string_view text, int two_q, double theta) {
  std::vector<double> angles;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) angles.push_back(parse_angle(item));
  if (angles.size() != 4 || text.empty() || text.back() == ',') {
    throw InvalidParameter("--settings needs four comma-separated angles");
  }
  return ChshSettings{angles[0], angles[1], angles[2], angles[3], two_q, theta};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spin-orbit photon state simulator"};
  app.require_subcommand(1);

  auto* field = app.add_subcommand("field", "polarization direction field as CSV");
  add_common(field, cfg);
  field->add_option("--rings", cfg.rings, "radial rings");
  field->add_option("--points", cfg.points, "samples per ring");

  auto* fringe = app.add_subcommand("fringe", "coincidence fringe vs beta_t - beta_r as CSV");
  add_common(fringe, cfg);
  fringe->add_option("--steps", cfg.steps, "scan points over [0, pi)");

  auto* chsh = app.add_subcommand("chsh", "exact CHSH parameter as JSON");
  add_common(chsh, cfg);
  chsh->add_flag("--optimize", cfg.optimize, "search for maximal S");
  chsh->add_option("--resolution", cfg.resolution, "optimizer grid resolution (radians)");
  chsh->add_option("--settings", cfg.settings_text, "standard|auto|a,b,c,d");

  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of S as JSON");
  add_common(sample, cfg);
  sample->add_option("--pairs", cfg.pairs, "detected pairs per setting pair");
  sample->add_option("--seed", cfg.seed, "RNG seed");
  sample->add_option("--settings", cfg.settings_text, "auto|standard|a,b,c,d");
  sample->add_option("--resolution", cfg.resolution, "optimizer grid resolution (radians)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArguments;
  }

  for (const auto* sub : {field, fringe, chsh, sample}) {
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  }

  try {
    validate(cfg);
    std::string text;
    if (cfg.subcommand == "field") text = run_field(cfg);
    else if (cfg.subcommand == "fringe") text = run_fringe(cfg);
    else if (cfg.subcommand == "chsh") text = run_chsh(cfg);
    else text = run_sample(cfg);
    emit(cfg, text, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArguments;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

}  // namespace spinorbit::cli
