#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "phaselab/cli.hpp"
#include "phaselab/phase_dynamics.hpp"

using namespace phaselab;
using namespace phaselab::cli;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinRel;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "phase_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::istringstream fs(line);
    std::string field;
    while (std::getline(fs, field, ',')) fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("orbit CSV", "[cli]") {
  const auto r = invoke({"orbit", "--theta", "pi/2", "--eps0", "0.99999", "--steps", "8",
                         "--format", "csv"});
  REQUIRE(r.code == exit_code::kSuccess);
  CHECK(r.out.find("\r\n") != std::string::npos);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<std::string>{"theta", "m", "eps_m"});
  CHECK_THAT(std::stod(rows[9][2]), WithinRel(0.0093949811162031697, 1e-9));
}

TEST_CASE("paper precision reproduces the printed trace", "[cli]") {
  const auto r = invoke({"orbit", "--theta", "pi/2", "--eps0", "0.99999", "--steps", "8",
                         "--format", "csv", "--paper-precision"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows[9][2] == "0.0094766");
  CHECK(rows[5][2] == "0.99376");
}

TEST_CASE("CSV round-trips full precision", "[cli][property]") {
  const auto theta = make_phase(2.3);
  const auto orbit = dynamics::orbit(theta, 0.87, 30);
  const auto r = invoke({"orbit", "--theta", "2.3", "--eps0", "0.87", "--steps", "30",
                         "--format", "csv"});
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 32);
  for (std::size_t m = 0; m <= 30; ++m) {
    CHECK(std::stod(rows[m + 1][0]) == 2.3);
    CHECK(std::stoul(rows[m + 1][1]) == m);
    CHECK(std::stod(rows[m + 1][2]) == orbit.epsilons[m]);
  }
}

TEST_CASE("orbit from a database size", "[cli]") {
  const auto r = invoke({"orbit", "--theta", "pi", "--N", "10000", "--steps", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK_THAT(std::stod(parse_csv(r.out)[5][2]), WithinRel(0.47539460478354323, 1e-12));
}

TEST_CASE("plan table", "[cli]") {
  const auto r = invoke({"plan", "--N", "10000", "--theta-first", "pi"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("total_queries: 121"));
  CHECK_THAT(r.out, ContainsSubstring("n_star: 8"));
  const auto csv = parse_csv(invoke({"plan", "--N", "10000", "--theta-first", "pi", "--format", "csv"}).out);
  REQUIRE(csv.size() == 3);
  CHECK(csv[1][3] == "4");
  CHECK(csv[2][3] == "1");
}

TEST_CASE("verify command", "[cli]") {
  const auto r = invoke({"verify", "--dim", "8", "--seed", "5", "--theta", "2pi/3"});
  CHECK(r.code == exit_code::kSuccess);
  const auto deep = invoke({"verify", "--dim", "4", "--seed", "1", "--theta", "pi", "--levels", "3",
                            "--format", "csv"});
  CHECK(deep.code == 0);
  CHECK(parse_csv(deep.out).size() == 5);
}

TEST_CASE("classify and constants", "[cli]") {
  auto r = invoke({"classify", "--theta", "pi", "--eps0", "0.99999"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("NonConvergent"));
  CHECK_THAT(r.out, ContainsSubstring("OscillatesAroundA"));
  r = invoke({"classify", "--theta", "acos(-1/4)"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("ConvergesToA_Exactly80"));
  r = invoke({"constants", "--theta", "acos(-1/4)", "--format", "json"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("\"command\": \"constants\""));
}

TEST_CASE("compare command", "[cli]") {
  const auto r = invoke({"compare", "--theta", "pi", "--eps0", "0.99999", "--steps", "5",
                         "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(std::stod(rows[6][3]) < 0.0);
}

TEST_CASE("sweep", "[cli]") {
  SECTION("sorted by theta then m") {
    const auto r = invoke({"sweep", "--thetas", "pi,pi/2,2pi/3", "--eps0", "0.99999", "--steps",
                           "13", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1 + 3 * 14);
    for (std::size_t i = 2; i < rows.size(); ++i) {
      const double t0 = std::stod(rows[i - 1][0]), t1 = std::stod(rows[i][0]);
      CHECK((t0 < t1 || (t0 == t1 && std::stoul(rows[i - 1][1]) < std::stoul(rows[i][1]))));
    }
  }
  SECTION("single point equals orbit") {
    const auto a = invoke({"sweep", "--thetas", "2.2", "--eps0", "0.9", "--steps", "6", "--format", "csv"});
    const auto b = invoke({"orbit", "--theta", "2.2", "--eps0", "0.9", "--steps", "6", "--format", "csv"});
    CHECK(a.out == b.out);
  }
  SECTION("zero steps keeps only eps0") {
    const auto r = invoke({"sweep", "--thetas", "pi/3,pi", "--eps0", "0.5", "--steps", "0",
                           "--format", "csv"});
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == "0");
    CHECK(rows[2][1] == "0");
  }
  SECTION("svg chart") {
    const auto r = invoke({"sweep", "--thetas", "pi/2,pi", "--eps0", "0.99999", "--steps", "10",
                           "--format", "svg"});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, StartsWith("<?xml"));
    CHECK_THAT(r.out, ContainsSubstring("<svg"));
    CHECK_THAT(r.out, ContainsSubstring("theta=pi/2"));
    CHECK_THAT(r.out, ContainsSubstring("</svg>"));
  }
  SECTION("empty grid entries") {
    CHECK(invoke({"sweep", "--thetas", "pi,,pi/2", "--eps0", "0.5"}).code == exit_code::kUsage);
  }
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(invoke({}).code == exit_code::kUsage);
  CHECK(invoke({"bogus"}).code == exit_code::kUsage);
  CHECK(invoke({"orbit", "--eps0", "0.5"}).code == exit_code::kUsage);
  CHECK(invoke({"orbit", "--theta", "pi", "--eps0", "0.5", "--N", "10"}).code == exit_code::kUsage);
  CHECK(invoke({"orbit", "--theta", "pi", "--eps0", "0.5", "--format", "xml"}).code == exit_code::kUsage);
  CHECK(invoke({"plan", "--N", "10", "--format", "svg"}).code == exit_code::kUsage);
  CHECK(invoke({"orbit", "--theta", "3.15", "--eps0", "0.5"}).code == exit_code::kDomain);
  CHECK(invoke({"orbit", "--theta", "0", "--eps0", "0.5"}).code == exit_code::kDomain);
  CHECK(invoke({"orbit", "--theta", "half", "--eps0", "0.5"}).code == exit_code::kDomain);
  CHECK(invoke({"orbit", "--theta", "pi", "--eps0", "1.5"}).code == exit_code::kDomain);
  CHECK(invoke({"verify", "--theta", "pi", "--dim", "65"}).code == exit_code::kDomain);
  const auto r = invoke({"classify", "--theta", "pi/2", "--eps0", "0.99999", "--max-iter", "10"});
  CHECK(r.code == exit_code::kNonConvergence);
  CHECK_THAT(r.err, ContainsSubstring("undetermined"));
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK_THAT(help.out, ContainsSubstring("orbit"));
}

TEST_CASE("diagnostics are one line", "[cli]") {
  const auto r = invoke({"orbit", "--theta", "3.15", "--eps0", "0.5"});
  CHECK(r.out.empty());
  REQUIRE_FALSE(r.err.empty());
  CHECK(r.err.find('\n') == r.err.size() - 1);
  CHECK_THAT(r.err, ContainsSubstring("(0, pi]"));
}

TEST_CASE("iteration cap from the environment", "[cli]") {
  const char* argv[] = {"phase_lab", "classify", "--theta", "pi", "--eps0", "0.9"};
  CHECK(parse_command_line(6, argv).max_iter == 1'000'000);
  CHECK(parse_command_line(6, argv, std::string("25")).max_iter == 25);
  CHECK_THROWS_AS(parse_command_line(6, argv, std::string("many")), UsageError);
  const char* explicit_argv[] = {"phase_lab", "classify", "--theta", "pi", "--eps0", "0.9",
                                 "--max-iter", "7"};
  CHECK(parse_command_line(8, explicit_argv, std::string("25")).max_iter == 7);

  ::setenv(kMaxIterEnv, "10", 1);
  CHECK(invoke({"classify", "--theta", "pi/2", "--eps0", "0.99999"}).code ==
        exit_code::kNonConvergence);
  ::unsetenv(kMaxIterEnv);
}

TEST_CASE("output file", "[cli]") {
  const auto path = std::filesystem::temp_directory_path() / "phase_lab_cli_test.csv";
  const auto r = invoke({"orbit", "--theta", "pi", "--eps0", "0.9", "--steps", "3", "--format",
                         "csv", "-o", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(parse_csv(content.str()).size() == 5);
  std::filesystem::remove(path);
}
