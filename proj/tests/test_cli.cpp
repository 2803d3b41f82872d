#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "urnlab/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = urnlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze emits the drift, roots and alpha") {
  CliResult r = invoke({"analyze", "--rule", "3:1,2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["command"] == "analyze");
  CHECK(j["inputs"]["rule"] == "3:1,2");
  CHECK(j["results"]["rule"] == json({{"k", 3}, {"E", {1, 2}}}));
  CHECK(j["results"]["b_coefficients"] == json({"0", "6", "-9"}));
  CHECK(j["results"]["alpha"]["rational"] == "2/3");
  CHECK(j["results"]["alpha"]["approx"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(j["results"]["b_at_half_sign"] == 1);
  CHECK(j.contains("timing_ms"));
}

TEST_CASE("analyze handles the zero drift") {
  CliResult r = invoke({"analyze", "--rule", "1:1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["b_coefficients"] == json({"0"}));
  CHECK(j["results"]["roots"].empty());
  CHECK(j["results"]["alpha"]["rational"] == "1/2");
}

TEST_CASE("exit codes: domain errors are 1, usage errors are 2") {
  CHECK(invoke({"analyze", "--rule", "3:5"}).code == 1);       // element out of range
  CHECK(invoke({"analyze", "--rule", "nonsense"}).code == 1);  // unknown rule syntax
  CHECK(invoke({"analyze"}).code == 2);                        // missing required flag
  CHECK(invoke({"definitely-not-a-command"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"simulate", "--rule", "5:0", "--n", "3", "--steps", "1"}).code == 1);  // k > n
  CHECK(invoke({"synthesize", "--target", "3/5", "--epsilon", "abc"}).code == 1);
}

TEST_CASE("validation errors carry a machine-readable message") {
  CliResult r = invoke({"analyze", "--rule", "3:5"});
  json j = json::parse(r.out);
  CHECK(j["error"]["message"].get<std::string>().find("3") != std::string::npos);
  CHECK_FALSE(j.contains("results"));
}

TEST_CASE("simulate: zero steps with exact start") {
  CliResult r = invoke({"simulate", "--rule", "1:0", "--n", "4", "--steps", "0", "--initial",
                        "m=2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["trajectories"][0]["endpoint_count"] == 2);
  CHECK(j["inputs"]["seed"] == 0);  // default seed is explicit
}

TEST_CASE("simulate: csv and json renderings agree") {
  const std::vector<std::string> base{"--rule", "3:1,2", "--n",    "50",
                                      "--steps", "200",  "--seed", "11"};
  std::vector<std::string> json_args{"simulate"};
  json_args.insert(json_args.end(), base.begin(), base.end());
  std::vector<std::string> csv_args = json_args;
  csv_args.push_back("--format");
  csv_args.push_back("csv");

  CliResult jr = invoke(json_args);
  CliResult cr = invoke(csv_args);
  REQUIRE(jr.code == 0);
  REQUIRE(cr.code == 0);

  json j = json::parse(jr.out);
  const auto& samples = j["results"]["trajectories"][0]["samples"];

  std::istringstream csv(cr.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "step,count,proportion");
  size_t idx = 0;
  while (std::getline(csv, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    REQUIRE(idx < samples.size());
    CHECK(std::stoull(line.substr(0, first)) == samples[idx][0].get<uint64_t>());
    CHECK(std::stoll(line.substr(first + 1, second - first - 1)) ==
          samples[idx][1].get<int64_t>());
    CHECK(std::stod(line.substr(second + 1)) ==
          doctest::Approx(samples[idx][2].get<double>()).epsilon(1e-14));
    ++idx;
  }
  CHECK(idx == samples.size());
}

TEST_CASE("round trip: echoed inputs reproduce the results byte-for-byte") {
  const std::vector<std::string> args{"simulate", "--rule", "4:0,2,4", "--n", "120", "--steps",
                                      "500",      "--seed", "77",      "--runs", "3"};
  CliResult first = invoke(args);
  REQUIRE(first.code == 0);
  json env = json::parse(first.out);

  std::vector<std::string> rebuilt{
      "simulate",
      "--rule", env["inputs"]["rule"].get<std::string>(),
      "--n", std::to_string(env["inputs"]["n"].get<int64_t>()),
      "--steps", std::to_string(env["inputs"]["steps"].get<uint64_t>()),
      "--seed", std::to_string(env["inputs"]["seed"].get<uint64_t>()),
      "--runs", std::to_string(env["inputs"]["runs"].get<uint64_t>()),
      "--record-stride", std::to_string(env["inputs"]["record_stride"].get<uint64_t>()),
      "--initial", env["inputs"]["initial"].get<std::string>(),
      "--format", env["inputs"]["format"].get<std::string>()};
  CliResult second = invoke(rebuilt);
  REQUIRE(second.code == 0);
  json env2 = json::parse(second.out);
  CHECK(env["results"].dump() == env2["results"].dump());
}

TEST_CASE("stationary: mean and optional distribution") {
  CliResult r = invoke({"stationary", "--rule", "ehrenfest", "--n", "4", "--distribution"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["mean"] == "1/2");
  CHECK(j["results"]["distribution"] == json({"1/16", "1/4", "3/8", "1/4", "1/16"}));
}

TEST_CASE("stationary: multiple recurrent classes produce a structured error") {
  CliResult r = invoke({"stationary", "--rule", "2:2", "--n", "4"});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["error"]["recurrent_classes"] == json({{0}, {4}}));
}

TEST_CASE("ode csv output") {
  CliResult r = invoke({"ode", "--rule", "3:1,2", "--t-end", "10"});
  REQUIRE(r.code == 0);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,x");
  std::string last;
  size_t rows = 0;
  while (std::getline(csv, line)) {
    last = line;
    ++rows;
  }
  CHECK(rows >= 513);
  const double x_end = std::stod(last.substr(last.find(',') + 1));
  CHECK(x_end == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("ode json output includes the exact limit") {
  CliResult r = invoke({"ode", "--rule", "3:1,2", "--t-end", "40", "--format", "json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["limit"]["rational"] == "2/3");
}

TEST_CASE("flow grid") {
  CliResult r = invoke({"flow", "--rule", "1:0", "--points", "5"});
  REQUIRE(r.code == 0);
  // b(y) = 1 - 2y on {0, 1/4, 1/2, 3/4, 1}
  CHECK(r.out == "x,b\n0,1\n0.25,0.5\n0.5,0\n0.75,-0.5\n1,-1\n");
}

TEST_CASE("verify reports no violations") {
  CliResult r = invoke({"verify", "--k-max", "4", "--q-max", "12"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["violations"] == json::array());
}

TEST_CASE("search catalog lists exact rationals") {
  CliResult r = invoke({"search", "--k-max", "3"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  std::vector<std::string> rationals;
  for (const auto& entry : j["results"]["catalog"])
    if (!entry["rational"].is_null()) rationals.push_back(entry["rational"].get<std::string>());
  CHECK(rationals == std::vector<std::string>{"0", "1/3", "1/2", "2/3", "1"});
  for (const auto& entry : j["results"]["catalog"]) {
    CHECK(entry.contains("rule"));
    CHECK(entry.contains("alpha_interval"));
    CHECK(entry.contains("alpha_approx"));
  }
}

TEST_CASE("synthesize subcommand") {
  CliResult r = invoke({"synthesize", "--target", "3/5", "--epsilon", "1/20", "--k-max", "60"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["k"].get<int>() % 5 == 0);
  CHECK(j["results"]["target"] == "3/5");

  // An impossible request fails with the best candidate attached.
  CliResult fail = invoke({"synthesize", "--target", "1/5", "--epsilon", "1/1000000000",
                           "--k-max", "15"});
  CHECK(fail.code == 1);
  json jf = json::parse(fail.out);
  CHECK(jf["error"].contains("best"));
}

TEST_CASE("--out writes the payload to a file") {
  const std::string path = "cli_test_out.json";
  CliResult r = invoke({"--out", path, "analyze", "--rule", "2:1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream file(path);
  REQUIRE(file.good());
  json j = json::parse(file);
  CHECK(j["results"]["alpha"]["rational"] == "1/2");
  std::remove(path.c_str());

  // The flag is also accepted after the subcommand.
  const std::string path2 = "cli_test_catalog.json";
  CliResult r2 = invoke({"search", "--k-max", "2", "--out", path2});
  REQUIRE(r2.code == 0);
  std::ifstream file2(path2);
  REQUIRE(file2.good());
  json j2 = json::parse(file2);
  CHECK(j2["command"] == "search");
  CHECK_FALSE(j2["results"]["catalog"].empty());
  std::remove(path2.c_str());
}

TEST_CASE("--version") {
  CliResult r = invoke({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.1.0\n");
}
