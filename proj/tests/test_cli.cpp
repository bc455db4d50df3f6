#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "remest/cli.hpp"
#include "remest/rangeprop.hpp"

using namespace remest;
namespace cli = remest::cli;

namespace {

std::string run(const std::string& command, const std::string& config_text, int expected_code = 0) {
  const cli::RunConfig config = cli::parse_config_text(config_text);
  std::ostringstream out;
  const int code = cli::run_command(command, config, out);
  CHECK(code == expected_code);
  return out.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (const char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("requires T and K") {
    CHECK_THROWS_AS(cli::parse_config_text(R"({"K": 1, "a": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_config_text(R"({"T": 1, "a": 1})"), std::invalid_argument);
  }
  SUBCASE("exactly one of a and noise_radii") {
    CHECK_THROWS_AS(cli::parse_config_text(R"({"T": 2, "K": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(
        cli::parse_config_text(R"({"T": 2, "K": 1, "a": 1, "noise_radii": [1, 1]})"),
        std::invalid_argument);
  }
  SUBCASE("heterogeneous radii and rotation matrix") {
    const auto config = cli::parse_config_text(
        R"({"T": 2, "K": 1, "noise_radii": [1, 0.5], "dim": 2,
            "rotation": [[0, -1], [1, 0]], "lambda": -2})");
    CHECK_FALSE(config.homogeneous);
    CHECK(config.spec.noise_radii == std::vector<double>{1.0, 0.5});
    CHECK(config.spec.rotation(0, 1) == -1.0);
    CHECK_NOTHROW(validate_spec(config.spec));
  }
  SUBCASE("bad JSON is reported") {
    CHECK_THROWS_AS(cli::parse_config_text("{"), std::invalid_argument);
  }
}

TEST_CASE("format_double is locale-free and shortest") {
  CHECK(cli::format_double(1.0) == "1");
  CHECK(cli::format_double(0.5) == "0.5");
  CHECK(cli::format_double(-0.0) == "0");
  CHECK(cli::format_double(2.5) == "2.5");
}

TEST_CASE("solve command reproduces the worked 5,3 instance") {
  const std::string out = run("solve", R"({"T": 5, "K": 3, "lambda": 1, "a": 1})");
  CHECK(out == "optimal_cost = 1\nschedule = 01010\nradii = 1,0,1,0,1\n");
}

TEST_CASE("solve command on a single step") {
  const std::string out = run("solve", R"({"T": 1, "K": 1, "a": 1})");
  CHECK(out == "optimal_cost = 0\nschedule = 1\nradii = 0\n");
}

TEST_CASE("solve command with growth lambda=2 transmits mid-horizon") {
  // All four feasible schedules evaluate to 7, 3, 1, 3; the optimum is 1.
  const std::string out = run("solve", R"({"T": 3, "K": 1, "lambda": 2, "a": 1})");
  CHECK(out.find("optimal_cost = 1\n") == 0);
  CHECK(out.find("schedule = 010") != std::string::npos);
}

TEST_CASE("solve command csv format") {
  const std::string out =
      run("solve", R"({"T": 5, "K": 3, "lambda": 1, "a": 1, "format": "csv"})");
  CHECK(out == "t,u,radius\n1,0,1\n2,1,0\n3,0,1\n4,1,0\n5,0,1\n");
}

TEST_CASE("solve command rejects invalid specs with a field name") {
  const cli::RunConfig config = cli::parse_config_text(R"({"T": 3, "K": 1, "a": -1})");
  std::ostringstream out;
  CHECK_THROWS_AS(cli::run_command("solve", config, out), ValidationError);
}

TEST_CASE("schedule command prints the uniform schedule and its cost") {
  const std::string out = run("schedule", R"({"T": 5, "K": 3, "lambda": 1, "a": 1})");
  CHECK(out == "Delta = 2\ncost = 1\nschedule = 01010\n");
}

TEST_CASE("verify command passes on tiny instances") {
  const std::string out = run("verify", R"({"T": 2, "K": 1, "lambda": 1, "a": 1})");
  CHECK(out.find("enumeration: PASS") != std::string::npos);
  CHECK(out.find("closed_form: PASS") != std::string::npos);
  CHECK(out.find("centralized: PASS") != std::string::npos);
  CHECK(out.find("game_tree: PASS") != std::string::npos);
  CHECK(out.find("result: PASS (optimal_cost = 1)") != std::string::npos);
}

TEST_CASE("verify command on the 4,2 instance") {
  const std::string out = run("verify", R"({"T": 4, "K": 2, "lambda": 1, "a": 1})");
  CHECK(out.find("enumeration: PASS") != std::string::npos);
  CHECK(out.find("closed_form: PASS (cost = 1)") != std::string::npos);
  CHECK(out.find("centralized: PASS") != std::string::npos);
  CHECK(out.find("result: PASS") != std::string::npos);
}

TEST_CASE("verify command skips guarded oracles on a long horizon") {
  const std::string out = run("verify", R"({"T": 25, "K": 3, "lambda": 1, "a": 1})");
  CHECK(out.find("enumeration: SKIPPED") != std::string::npos);
  CHECK(out.find("closed_form: PASS") != std::string::npos);
  CHECK(out.find("result: PASS") != std::string::npos);
}

TEST_CASE("sweep command over the budget axis") {
  const std::string out =
      run("sweep", R"({"T": 9, "K": 1, "lambda": 1, "a": 1, "sweep": {"K": [1, 2, 3, 4]}})");
  CHECK(out ==
        "T,K,lambda,a,cost,Delta\n"
        "9,1,1,1,4,5\n"
        "9,2,1,1,3,4\n"
        "9,3,1,1,2,3\n"
        "9,4,1,1,1,2\n");
}

TEST_CASE("sweep command over epsilon emits the minimum budget") {
  const std::string out = run(
      "sweep", R"({"T": 9, "K": 1, "lambda": 1, "a": 1, "sweep": {"epsilon": [0.5, 1, 2]}})");
  const auto lines = split(out, '\n');
  CHECK(lines[0] == "T,K,lambda,a,cost,Delta,epsilon,K_star");
  CHECK(lines[1] == "9,1,1,1,4,5,0.5,infeasible");
  CHECK(lines[2] == "9,1,1,1,4,5,1,4");
  CHECK(lines[3] == "9,1,1,1,4,5,2,3");
}

TEST_CASE("sweep command rejects an empty axis") {
  CHECK_THROWS_AS(run("sweep", R"({"T": 9, "K": 1, "a": 1, "sweep": {"K": []}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(run("sweep", R"({"T": 9, "K": 1, "a": 1})"), std::invalid_argument);
}

TEST_CASE("simulate command with adversarial noise is tight row by row") {
  const std::string out =
      run("simulate", R"({"T": 5, "K": 2, "lambda": 1.5, "a": 1, "seed": 3})");
  const auto lines = split(out, '\n');
  CHECK(lines[0] == "t,x1,xhat1,y1,error,radius_bound,u");
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[4]) == doctest::Approx(std::stod(cells[5])).epsilon(1e-9));
  }
}

TEST_CASE("simulate command respects the radius bound for random noise") {
  const std::string out = run(
      "simulate",
      R"({"T": 6, "K": 2, "lambda": 1.2, "a": 1, "seed": 11, "noise_mode": "seeded-random"})");
  const auto lines = split(out, '\n');
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[4]) <= std::stod(cells[5]) + 1e-9);
  }
}

TEST_CASE("simulate command is byte-deterministic for a fixed seed") {
  const std::string config =
      R"({"T": 6, "K": 2, "lambda": 0.7, "a": 1, "seed": 42, "noise_mode": "seeded-random"})";
  CHECK(run("simulate", config) == run("simulate", config));
}

TEST_CASE("simulate command reads a noise file and reports eps symbols") {
  const std::string path = "zero_noise_test.csv";
  {
    std::ofstream file(path, std::ios::binary);
    file << "n1\n0\n0\n0\n";
  }
  const std::string out = run("simulate", R"({"T": 3, "K": 1, "lambda": 2, "a": 1,
      "noise_mode": "from-file", "noise_file": "zero_noise_test.csv", "schedule": "010",
      "format": "plain"})");
  CHECK(out.find("y=eps") != std::string::npos);
  CHECK(out.find("cost = 0") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("simulate command rejects an inadmissible noise file") {
  const std::string path = "hot_noise_test.csv";
  {
    std::ofstream file(path, std::ios::binary);
    file << "2\n0\n0\n";
  }
  CHECK_THROWS_AS(run("simulate", R"({"T": 3, "K": 1, "lambda": 1, "a": 1,
      "noise_mode": "from-file", "noise_file": "hot_noise_test.csv"})"),
                  std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("verify exits with code 2 only on FAIL")  // SKIPPED checks stay exit 0
{
  const cli::RunConfig config =
      cli::parse_config_text(R"({"T": 25, "K": 3, "lambda": 1, "a": 1})");
  std::ostringstream out;
  CHECK(cli::run_command("verify", config, out) == 0);
}

TEST_CASE("outputs are deterministic across repeated runs") {
  for (const std::string command : {"solve", "verify", "sweep", "schedule"}) {
    const std::string config = command == "sweep"
                                   ? R"({"T": 7, "K": 2, "lambda": 1, "a": 1,
                                         "sweep": {"K": [1, 2], "lambda": [0.5, 1]}})"
                                   : R"({"T": 7, "K": 2, "lambda": 1, "a": 1})";
    CHECK(run(command, config) == run(command, config));
  }
}
