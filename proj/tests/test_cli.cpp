// End-to-end checks of the command-line tool: exit codes, output shapes
// and determinism. The binary path comes from the build system.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(EVCG_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("evcg_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  fs::path dir_;
};

const char* kLinearScenario = R"({
  "T": 4, "T_offpeak": 2, "capacities": [2, 2, 2, 2],
  "players": [
    {"d": 2, "r": 1.0, "bD": 0.3, "bN": 0.2,
     "f_peak": {"kind": "linear", "alpha": 1.0, "beta": 1.0},
     "f_offpeak": {"kind": "linear", "alpha": 1.0, "beta": 1.0}},
    {"d": 2, "r": 1.0, "bD": 0.4, "bN": 0.3,
     "f_peak": {"kind": "linear", "alpha": 1.0, "beta": 1.0},
     "f_offpeak": {"kind": "linear", "alpha": 1.0, "beta": 1.0}},
    {"d": 2, "r": 1.0, "bD": 0.4, "bN": 0.3,
     "f_peak": {"kind": "linear", "alpha": 1.0, "beta": 1.0},
     "f_offpeak": {"kind": "linear", "alpha": 1.0, "beta": 1.0}}
  ]
})";

const char* kSplitProfile = "[[0,0,1,1],[1,1,0,0],[1,1,0,0]]";

const char* kCevScenario = R"({
  "n": 2, "M": 1.0, "M_D": 1.0, "M_N": 2.0,
  "bD": 1.0, "bN": 1.0, "aD": 5.0, "aN": 3.0, "rD": 0.0, "rN": 0.0
})";

}  // namespace

TEST_CASE("cost command") {
  TempDir tmp;
  const std::string scenario = tmp.write("scenario.json", kLinearScenario);
  const std::string profile = tmp.write("profile.json", kSplitProfile);

  const RunResult r =
      run_cli("cost --scenario " + scenario + " --profile " + profile);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  for (int i = 0; i < 3; ++i)
    CHECK(j["players"][i]["total"].get<double>() ==
          doctest::Approx(0.6).epsilon(1e-9));

  // identical invocations produce byte-identical output
  const RunResult again =
      run_cli("cost --scenario " + scenario + " --profile " + profile);
  CHECK(again.output == r.output);

  const RunResult csv = run_cli("cost --format csv --scenario " + scenario +
                                " --profile " + profile);
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.rfind("player,period,load,x,energy,direct,dissat\n", 0) ==
        0);
}

TEST_CASE("cost command input errors") {
  TempDir tmp;
  const std::string scenario = tmp.write("scenario.json", kLinearScenario);

  CHECK(run_cli("cost --scenario " + scenario + " --profile " +
                tmp.path("missing.json"))
            .exit_code == 2);

  const std::string bad_profile =
      tmp.write("bad.json", "[[1,1,1,1],[1,1,0,0],[1,1,0,0]]");
  CHECK(run_cli("cost --scenario " + scenario + " --profile " + bad_profile)
            .exit_code == 2);

  const std::string bad_scenario = tmp.write("bad_scenario.json", "{}");
  CHECK(run_cli("cost --scenario " + bad_scenario + " --profile " +
                bad_profile)
            .exit_code == 2);
}

TEST_CASE("nash commands") {
  TempDir tmp;
  const std::string scenario = tmp.write("scenario.json", kLinearScenario);
  const std::string profile = tmp.write("profile.json", kSplitProfile);

  const RunResult check =
      run_cli("nash check --scenario " + scenario + " --profile " + profile);
  REQUIRE(check.exit_code == 0);
  CHECK(json::parse(check.output)["is_nash"] == true);

  const RunResult enumerate = run_cli("nash enumerate --scenario " + scenario);
  REQUIRE(enumerate.exit_code == 0);
  const json found = json::parse(enumerate.output);
  CHECK(found["count"].get<int>() >= 1);
  bool has_split = false;
  for (const json& p : found["profiles"]) {
    if (p["matrix"] == json::parse(kSplitProfile)) {
      has_split = true;
      CHECK(p["classification"] == "non_distributed");
    }
  }
  CHECK(has_split);

  const RunResult best = run_cli("nash best-response --player 0 --scenario " +
                                 scenario + " --profile " + profile);
  REQUIRE(best.exit_code == 0);
  CHECK(json::parse(best.output)["improving"] == false);

  // enumeration output is order-stable and byte-identical across runs
  CHECK(run_cli("nash enumerate --scenario " + scenario).output ==
        enumerate.output);

  // cap exceeded maps to exit 3
  CHECK(run_cli("nash enumerate --cap 10 --scenario " + scenario).exit_code ==
        3);
}

TEST_CASE("herding commands") {
  TempDir tmp;
  const std::string scenario = tmp.write("scenario.json", kLinearScenario);

  const RunResult threshold =
      run_cli("herding threshold --scenario " + scenario);
  REQUIRE(threshold.exit_code == 0);
  const json t = json::parse(threshold.output);
  CHECK(t["kind"] == "threshold");
  CHECK(t["x_hat"].get<double>() == doctest::Approx(0.875));

  // logistic curves go through the bisection path
  json logistic = json::parse(kLinearScenario);
  for (json& p : logistic["players"]) {
    p["f_peak"] = {{"kind", "logistic"}, {"alpha", 1.5}, {"beta", 5.0}};
    p["f_offpeak"] = p["f_peak"];
    p["bD"] = 0.4;
    p["bN"] = 0.3;
  }
  const RunResult log_threshold = run_cli(
      "herding threshold --scenario " +
      tmp.write("logistic.json", logistic.dump()));
  REQUIRE(log_threshold.exit_code == 0);
  const json lt = json::parse(log_threshold.output);
  CHECK(lt["kind"] == "threshold");
  CHECK(lt["x_hat"].get<double>() ==
        doctest::Approx(0.6915582158342454).epsilon(1e-6));

  // the sweep wants identical players; patch the scenario
  json homogeneous = json::parse(kLinearScenario);
  homogeneous["players"][0] = homogeneous["players"][1];
  const std::string homo =
      tmp.write("homogeneous.json", homogeneous.dump());
  const RunResult sweep = run_cli("herding sweep --n-from 2 --n-to 5 " +
                                  std::string("--scenario ") + homo +
                                  " --curve " + tmp.path("curve.csv"));
  REQUIRE(sweep.exit_code == 0);
  CHECK(sweep.output.rfind("n,x,herding_is_nash,threshold_prediction\n",
                           0) == 0);
  std::ifstream curve(tmp.path("curve.csv"));
  std::string header;
  std::getline(curve, header);
  CHECK(header == "x,f(x),bD-bN*x");

  CHECK(run_cli("herding sweep --scenario " + scenario).exit_code == 2);
}

TEST_CASE("price-region command") {
  TempDir tmp;
  const std::string scenario = tmp.write("scenario.json", kLinearScenario);
  const std::string profile = tmp.write("profile.json", kSplitProfile);

  const RunResult r = run_cli("price-region --scenario " + scenario +
                              " --profile " + profile + " --grid " +
                              tmp.path("grid.csv") + " --grid-res 10");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["feasible"] == true);
  CHECK(j["verified"] == true);
  REQUIRE(j["regions"].size() == 3);
  for (const json& region : j["regions"])
    CHECK(region["classification"] != "empty");

  std::ifstream grid(tmp.path("grid.csv"));
  std::string header;
  std::getline(grid, header);
  CHECK(header == "bD,bN,feasible");
}

TEST_CASE("cev commands") {
  TempDir tmp;
  const std::string scenario = tmp.write("cev.json", kCevScenario);

  const RunResult nash = run_cli("cev nash --scenario " + scenario);
  REQUIRE(nash.exit_code == 0);
  const json j = json::parse(nash.output);
  CHECK(j["A"].get<double>() == doctest::Approx(-2.0));
  CHECK(j["B"].get<double>() == doctest::Approx(3.0));
  CHECK(j["R"].get<double>() == doctest::Approx(1.0));
  CHECK(j["q_star"].get<double>() == doctest::Approx(1.0 / 3.0));

  const RunResult gap =
      run_cli("cev gap --grid-res 10 --scenario " + scenario);
  REQUIRE(gap.exit_code == 0);
  CHECK(gap.output.rfind("g1,gap\n", 0) == 0);

  const RunResult scan =
      run_cli("cev scan --grid-res 60 --scenario " + scenario);
  REQUIRE(scan.exit_code == 0);
  const json verdict = json::parse(scan.output);
  CHECK(verdict["interior"] == true);
  CHECK(verdict["coincides"] == true);

  // degenerate quadratic coefficient maps to exit 4
  json degenerate = json::parse(kCevScenario);
  degenerate["aD"] = 2.0;  // (2-1)/1 - (3-1)/2 = 0
  const std::string degenerate_path =
      tmp.write("degenerate.json", degenerate.dump());
  CHECK(run_cli("cev nash --scenario " + degenerate_path).exit_code == 4);

  // continuous commands refuse discrete scenarios
  const std::string discrete = tmp.write("discrete.json", kLinearScenario);
  CHECK(run_cli("cev nash --scenario " + discrete).exit_code == 2);
}
