// Copyright 2026 The qs3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Spawns the installed-style binary (path in QS3_CLI) and checks the
// documented contract: pure-JSON stdout, progress on stderr, exit code 0
// for clean runs, 1 for failed checks, 2 for configuration errors.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int exit_code = -1;
  std::string out, err;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("QS3_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "QS3_CLI must point at the binary under test");
  const std::string cmd = "\"" + std::string(bin) + "\" " + args + " > cli_out.tmp 2> cli_err.tmp";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp("cli_out.tmp");
  r.err = slurp("cli_err.tmp");
  std::remove("cli_out.tmp");
  std::remove("cli_err.tmp");
  return r;
}

}  // namespace

TEST_CASE("list prints the catalog as JSON on stdout") {
  const RunResult r = run_cli("list");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  bool found = false;
  for (const auto& e : j) found = found || e["name"] == "product11";
  CHECK(found);
}

TEST_CASE("check emits a parseable report and exits zero on a clean member") {
  const RunResult r = run_cli("check --manifold flat7 --points 3 --trials 2 --no-fd");
  CHECK(r.exit_code == 0);
  CHECK(!r.out.empty());
  CHECK(r.out.front() == '{');  // stdout carries nothing but the report
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["all_passed"] == true);
  CHECK(j["manifold"]["name"] == "flat7");
  CHECK(j["config"]["fd_check"] == false);
  // Progress stays on stderr.
  CHECK(r.err.find("checking flat7") != std::string::npos);
  CHECK(r.err.find("checks passed") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string args = "check --manifold sphere7 --points 2 --trials 2 --no-fd --seed 7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const RunResult c = run_cli(args + "7");
  CHECK(c.out != a.out);
}

TEST_CASE("the out flag redirects the report to a file") {
  const RunResult direct = run_cli("check --manifold flat7 --points 2 --trials 2 --no-fd");
  const RunResult redirected =
      run_cli("check --manifold flat7 --points 2 --trials 2 --no-fd --out cli_report.tmp");
  CHECK(redirected.exit_code == 0);
  CHECK(redirected.out.empty());
  CHECK(slurp("cli_report.tmp") == direct.out);
  std::remove("cli_report.tmp");
}

TEST_CASE("failed checks keep the report and exit one") {
  const char* path = "cli_bad_spec.tmp.json";
  {
    std::ofstream f(path);
    f << "{\"name\":\"diag3\",\"dim\":3,\"g\":[[1,0,0],[0,1,0],[0,0,1]],"
         "\"phi\":[[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],"
         "[[0,0,0],[0,0,0],[0,0,0]]],"
         "\"xi\":[[1,0,0],[0,1,0],[0,0,1]]}";
  }
  const RunResult r = run_cli(std::string("check --manifold ") + path +
                              " --points 2 --trials 2 --no-fd");
  std::remove(path);
  CHECK(r.exit_code == 1);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["all_passed"] == false);
}

TEST_CASE("configuration problems exit two") {
  CHECK(run_cli("check --manifold no-such-member").exit_code == 2);
  CHECK(run_cli("check --manifold flat7 --points 0").exit_code == 2);
  CHECK(run_cli("check").exit_code == 2);          // missing required flag
  CHECK(run_cli("").exit_code == 2);               // missing subcommand
  CHECK(run_cli("frobnicate").exit_code == 2);     // unknown subcommand
}

TEST_CASE("classify prints a one-line verdict") {
  const RunResult r = run_cli("classify --manifold sphere7 --points 8");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "three_c_sasakian");
  CHECK(j["manifold"] == "sphere7");
  CHECK(double(j["k_value"]) == doctest::Approx(1.0).epsilon(1e-7));

  const RunResult f = run_cli("classify --manifold flat11 --points 8");
  CHECK(f.exit_code == 0);
  CHECK(nlohmann::json::parse(f.out)["verdict"] == "three_cosymplectic");
}

TEST_CASE("version flag") {
  const RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}
