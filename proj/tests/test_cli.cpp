#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& cli_args) {
  const std::string cmd = std::string(KMREP_CLI_PATH) + " " + cli_args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t got = fread(buf.data(), 1, buf.size(), pipe)) result.output.append(buf.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("km subcommand reports value, oracle and error together") {
  const auto r = run_cli("km --family ehrenfest --N 3 --n 10 --i 0 --j 0 --format json");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.output);
  REQUIRE(out.contains("value"));
  REQUIRE(out.contains("oracle"));
  REQUIRE(out.contains("abs_err"));
  CHECK(out["abs_err"].get<double>() < 1e-11);
  CHECK(std::fabs(out["value"].get<double>() - out["oracle"].get<double>()) ==
        doctest::Approx(out["abs_err"].get<double>()).epsilon(1e-12));
  CHECK(out["meta"]["family"] == "ehrenfest");
}

TEST_CASE("analyze reproduces the closed-form return time") {
  const auto r = run_cli("analyze --family ehrenfest --N 1 --state 0 --format json");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.output);
  CHECK(out["recurrent"].get<bool>());
  CHECK(out["expected_return_time"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_FALSE(out["classification"]["limit_exists"].get<bool>());
}

TEST_CASE("power on a block family returns the identity block at n = 0") {
  const auto r = run_cli("power --family chebyshev_block --n 0 --i 0 --j 0 --format json");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.output);
  const auto block = out["block"];
  CHECK(block[0][0].get<double>() == 1.0);
  CHECK(block[0][1].get<double>() == 0.0);
  CHECK(block[1][0].get<double>() == 0.0);
  CHECK(block[1][1].get<double>() == 1.0);
}

TEST_CASE("csv output round-trips at 17 significant digits") {
  const auto r = run_cli("km --family chebyshev_walk --p 0.3 --n 7 --i 1 --j 2 --format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header, row;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "family,n,i,j,value,oracle,abs_err");
  REQUIRE(std::getline(lines, row));

  // recover the printed value and reprint it: identical text means identical double
  const size_t value_start = row.find(",7,1,2,") + 7;
  const std::string value_text = row.substr(value_start, row.find(',', value_start) - value_start);
  const double parsed = std::strtod(value_text.c_str(), nullptr);
  char reprinted[64];
  std::snprintf(reprinted, sizeof reprinted, "%.17g", parsed);
  CHECK(value_text == reprinted);

  const auto again = run_cli("km --family chebyshev_walk --p 0.3 --n 7 --i 1 --j 2 --format json");
  const json out = json::parse(again.output);
  CHECK(parsed == out["value"].get<double>());
}

TEST_CASE("verify exits 0 on sound families and 2 when the tolerance is impossible") {
  CHECK(run_cli("verify --family ehrenfest --N 2 --n-max 12 --index-max 4").exit_code == 0);
  // quadrature-backed family: the km-vs-power error is tiny but never 0
  CHECK(run_cli("verify --family chebyshev_walk --p 0.3 --n-max 6 --index-max 3 --tol 1e-30")
            .exit_code == 2);
}

TEST_CASE("spec files drive every subcommand") {
  const char* path = "/tmp/kmrep_cli_spec.json";
  {
    std::ofstream out(path);
    out << R"({"family": "bernoulli_laplace", "params": {"W": 2, "B": 2}})";
  }
  const auto r = run_cli(std::string("km --spec ") + path + " --n 3 --i 0 --j 1");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.output)["abs_err"].get<double>() < 1e-11);
  std::remove(path);
}

TEST_CASE("custom chains work for power and simulate but not km") {
  const char* path = "/tmp/kmrep_cli_custom.json";
  {
    std::ofstream out(path);
    out << R"({"custom_tridiagonal": {"p": [0.5, 0.25, 0.0], "q": [0.0, 0.25, 0.5],
               "r": [0.5, 0.5, 0.5]}})";
  }
  CHECK(run_cli(std::string("power --spec ") + path + " --n 2 --i 0 --j 0").exit_code == 0);
  CHECK(run_cli(std::string("simulate --spec ") + path +
                " --trajectories 100 --horizon 8 --checkpoints 2")
            .exit_code == 0);
  CHECK(run_cli(std::string("km --spec ") + path + " --n 2 --i 0 --j 0").exit_code == 1);
  std::remove(path);
}

TEST_CASE("malformed specs and unknown flags exit 1") {
  const char* path = "/tmp/kmrep_cli_bad.json";
  {
    std::ofstream out(path);
    out << R"({"family": "ehrenfest", "params": {"N": "three"}})";
  }
  CHECK(run_cli(std::string("info --spec ") + path).exit_code == 1);
  std::remove(path);
  CHECK(run_cli("info --family ehrenfest --N 1 --frobnicate 3").exit_code == 1);
  CHECK(run_cli("km --family ehrenfest --N 1 --n 1 --i 0").exit_code == 1);  // missing --j
  CHECK(run_cli("").exit_code == 1);  // a subcommand is required
  CHECK(run_cli("info --family ehrenfest --N 1 --spec /tmp/x.json").exit_code == 1);
}

TEST_CASE("simulate reports the rng id, references and flags") {
  const auto r = run_cli(
      "simulate --family ehrenfest --N 1 --seed 7 --trajectories 20000 --horizon 64 "
      "--checkpoints 2 --format json");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.output);
  CHECK(out["meta"]["rng"] == "splitmix64-streams-v1");
  CHECK(out["return_time"]["returned"].get<long long>() > 0);
  bool saw_reference = false;
  for (const auto& e : out["checkpoints"][0]["entries"])
    if (e.contains("reference") && e["state"].get<int>() == 0) {
      saw_reference = true;
      CHECK(e["flag"] == "ok");
      CHECK(std::fabs(e["reference"].get<double>() - 0.5) < 1e-12);
    }
  CHECK(saw_reference);
}

TEST_CASE("orthogonality prints a residual table") {
  const auto r = run_cli("orthogonality --family chebyshev_block --index-max 4 --format json");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.output);
  CHECK(out["max_residual"].get<double>() < 1e-9);
  bool saw_condition = false;
  for (const auto& row : out["gram"])
    if (row.contains("condition")) saw_condition = true;
  CHECK(saw_condition);
}

TEST_CASE("simulate refuses the non-stochastic block family") {
  CHECK(run_cli("simulate --family chebyshev_block --trajectories 10 --horizon 4").exit_code == 1);
}

TEST_CASE("output lands in the requested file") {
  const char* path = "/tmp/kmrep_cli_out.json";
  const auto r =
      run_cli(std::string("info --family chebyshev_walk --p 0.3 --output ") + path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  json out;
  in >> out;
  CHECK(out["meta"]["family"] == "chebyshev_walk");
  std::remove(path);
}
