#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinorbit/bell.hpp"
#include "spinorbit/cli.hpp"
#include "spinorbit/errors.hpp"

using namespace spinorbit;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "spinorbit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("q tokens") {
    CHECK(cli::parse_two_q("1/2") == 1);
    CHECK(cli::parse_two_q("-3/2") == -3);
    CHECK(cli::parse_two_q("1") == 2);
    CHECK(cli::parse_two_q("+2") == 4);
    CHECK(cli::parse_two_q("-1") == -2);
    CHECK_THROWS_AS(cli::parse_two_q("0"), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_two_q("0/2"), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_two_q("1/3"), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_two_q("0.5"), InvalidParameter);
    CHECK(cli::format_q(3) == "3/2");
    CHECK(cli::format_q(-2) == "-1");
  }

  TEST_CASE("angle tokens") {
    CHECK(cli::parse_angle("0") == 0.0);
    CHECK(cli::parse_angle("0.25") == 0.25);
    CHECK(cli::parse_angle("pi") == doctest::Approx(std::numbers::pi));
    CHECK(cli::parse_angle("pi/4") == doctest::Approx(std::numbers::pi / 4));
    CHECK(cli::parse_angle("-3pi/16") == doctest::Approx(-3 * std::numbers::pi / 16));
    CHECK_THROWS_AS(cli::parse_angle("abc"), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_angle("pi/0"), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_settings("0,1,2", 2, 0.0), InvalidParameter);
  }

  TEST_CASE("field subcommand writes unit directions") {
    const Result r = invoke({"field", "--q", "1/2", "--theta", "0", "--rings", "8", "--points", "64"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 513);
    CHECK(rows[0] == "x,y,ex,ey");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      double x, y, ex, ey;
      char c;
      std::istringstream in(rows[i]);
      in >> x >> c >> y >> c >> ex >> c >> ey;
      CHECK(std::abs(ex * ex + ey * ey - 1.0) < 1e-12);
      const double rad = std::hypot(x, y);
      CHECK(std::abs(ex - x / rad) < 1e-12);  // radial pattern
      CHECK(std::abs(ey - y / rad) < 1e-12);
    }
    CHECK(r.out.find('\r') == std::string::npos);
  }

  TEST_CASE("fringe subcommand output fits a unit-visibility fringe") {
    const Result r = invoke({"fringe", "--q", "1", "--steps", "360"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 361);
    CHECK(rows[0] == "delta,coincidence,probability");
    std::vector<FringeSample> samples;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      double d, c, p;
      char sep;
      std::istringstream in(rows[i]);
      in >> d >> sep >> c >> sep >> p;
      samples.push_back({d, c});
    }
    const FringeFit fit = fringe_fit(samples);
    CHECK(fit.visibility == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.period == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
  }

  TEST_CASE("chsh subcommand reports S = 2 sqrt2") {
    const Result r = invoke({"chsh", "--q", "1", "--optimize"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["S"].get<double>() - 2.828427125) < 1e-9);
    for (const char* key : {"S", "settings", "visibility", "offset_delta0", "spectrum"}) CHECK(j.contains(key));
    CHECK(j["visibility"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    const Result standard = invoke({"chsh", "--q", "3/2", "--spectrum", "gaussian", "--sigma", "1.5"});
    REQUIRE(standard.code == 0);
    CHECK(std::abs(nlohmann::json::parse(standard.out)["S"].get<double>() - 2 * std::sqrt(2.0)) < 1e-12);

    const Result explicit_settings = invoke({"chsh", "--q", "1", "--settings", "0,0,0,0"});
    REQUIRE(explicit_settings.code == 0);
    CHECK(std::abs(nlohmann::json::parse(explicit_settings.out)["S"].get<double>() - 2.0) < 1e-12);
  }

  TEST_CASE("sample subcommand") {
    const Result r = invoke({"sample", "--q", "1", "--pairs", "100000", "--seed", "42"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double s_hat = j["s_hat"].get<double>();
    const double stderr_s = j["stderr"].get<double>();
    CHECK(std::abs(s_hat - 2 * std::sqrt(2.0)) < 5 * stderr_s);
    CHECK(j["counts"].size() == 4);
  }

  TEST_CASE("invalid arguments exit with 2") {
    CHECK(invoke({"field", "--q", "1/3"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"field", "--q", "0"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"field"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"field", "--q", "1", "--rings", "0"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"fringe", "--q", "1", "--spectrum", "lorentz"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"fringe", "--q", "1", "--sigma", "-1"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"sample", "--q", "1", "--pairs", "2"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"chsh", "--q", "1", "--settings", "1,2"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({"bogus"}).code == cli::kExitInvalidArguments);
    CHECK(invoke({}).code == cli::kExitInvalidArguments);
    const Result r = invoke({"field", "--q", "abc"});
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("numeric failures exit with 3") {
    const Result r = invoke({"chsh", "--q", "2", "--mmax", "3"});
    CHECK(r.code == cli::kExitNumericFailure);
    CHECK(r.err.find("numeric failure") != std::string::npos);
  }

  TEST_CASE("output file and byte-identical reruns") {
    const auto dir = std::filesystem::temp_directory_path() / "spinorbit_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "f.csv").string();
    REQUIRE(invoke({"field", "--q", "3/2", "--theta", "pi/4", "--rings", "2", "--points", "12", "--out", path}).code == 0);
    const std::string first = read_file(path);
    REQUIRE(invoke({"field", "--q", "3/2", "--theta", "pi/4", "--rings", "2", "--points", "12", "--out", path}).code == 0);
    CHECK(read_file(path) == first);
    CHECK(lines(first).size() == 25);

    const std::vector<std::string> sample{"sample", "--q", "1/2", "--pairs", "1000", "--seed", "9"};
    CHECK(invoke(sample).out == invoke(sample).out);
  }

  TEST_CASE("golden outputs") {
    const std::filesystem::path golden(SPINORBIT_GOLDEN_DIR);
    struct Case {
      const char* file;
      std::vector<std::string> args;
    };
    const std::vector<Case> cases{
        {"field_q1_2_theta_pi2.csv", {"field", "--q", "1/2", "--theta", "pi/2", "--rings", "2", "--points", "8"}},
        {"fringe_q3_2.csv", {"fringe", "--q", "3/2", "--steps", "16"}},
        {"chsh_q1_optimize.json", {"chsh", "--q", "1", "--optimize"}},
        {"sample_q1_seed7.json", {"sample", "--q", "1", "--pairs", "10000", "--seed", "7", "--settings", "standard"}},
    };
    for (const auto& c : cases) {
      CAPTURE(c.file);
      const Result r = invoke(c.args);
      REQUIRE(r.code == 0);
      CHECK(r.out == read_file(golden / c.file));
    }
  }

  TEST_CASE("default-size subcommands finish quickly") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"field", "--q", "1"}, {"fringe", "--q", "1/2"},
          {"chsh", "--q", "1/2", "--optimize"}, {"sample", "--q", "1/2"}}) {
      const auto start = std::chrono::steady_clock::now();
      CHECK(invoke(args).code == 0);
      CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5.0);
    }
  }
}
