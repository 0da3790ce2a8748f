// Copyright 2026 The camp-opt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the camp-opt binary: exit codes, report.json shape,
// CSV headers, and byte-for-byte determinism of reruns.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

#ifndef CAMPOPT_CLI_PATH
#error "CAMPOPT_CLI_PATH must point at the camp-opt binary"
#endif

// Fresh scratch directory per test case, cleaned up on destruction.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("camp-opt-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path operator/(const std::string& leaf) const { return path / leaf; }
};

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CAMPOPT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  return line;
}

TEST_CASE("run: solves the default setting and writes the full report") {
  const ScratchDir dir("run");
  const int code = run_cli("run --setting fundamental --dataset karate --kg 5 --kb 5 --seed 42 --out-dir " +
                           (dir / "out").string());
  REQUIRE(code == 0);

  const json report = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report.at("setting") == "fundamental");
  CHECK(report.at("network").at("nodes") == 34);
  CHECK(report.at("network").at("edges") == 156);
  CHECK(report.at("value").is_number());
  CHECK(report.at("allocations").at("x").size() == 34);
  CHECK(report.at("allocations").at("y").size() == 34);
  CHECK(report.at("diagnostics").contains("maxmin"));
  CHECK(report.at("diagnostics").contains("minmax"));
  CHECK_FALSE(report.contains("error"));

  const fs::path csv = dir / "out" / "allocations.csv";
  REQUIRE(fs::exists(csv));
  CHECK(first_line(csv) == "node,x,y,r,r_wg,r_wb,v_final");
  // Header plus one row per node.
  std::ifstream in(csv);
  int lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 35);
}

TEST_CASE("run: reruns into the same directory are byte-identical") {
  const ScratchDir dir("determinism");
  const std::string args =
      "run --setting ccc-maxmin --dataset karate --kg 3 --kb 2 --seed 7 --out-dir " +
      (dir / "out").string();
  REQUIRE(run_cli(args) == 0);
  const std::string once = slurp(dir / "out" / "report.json");
  const std::string once_csv = slurp(dir / "out" / "allocations.csv");
  REQUIRE(run_cli(args) == 0);
  CHECK(slurp(dir / "out" / "report.json") == once);
  CHECK(slurp(dir / "out" / "allocations.csv") == once_csv);
}

TEST_CASE("trajectory: writes the per-step opinions and convergence data") {
  const ScratchDir dir("trajectory");
  const int code = run_cli(
      "trajectory --setting fundamental --dataset karate --kg 5 --kb 5 --seed 42 "
      "--tol 1e-4 --out-dir " +
      (dir / "out").string());
  REQUIRE(code == 0);

  const json report = json::parse(slurp(dir / "out" / "report.json"));
  REQUIRE(report.contains("trajectory"));
  CHECK(report.at("trajectory").at("converged") == true);
  const int steps = report.at("trajectory").at("steps").get<int>();
  CHECK(steps >= 1);
  CHECK(report.at("trajectory").at("sum_per_step").size() ==
        static_cast<std::size_t>(steps) + 1);

  const fs::path csv = dir / "out" / "trajectory.csv";
  REQUIRE(fs::exists(csv));
  CHECK(first_line(csv) == "tau,node,opinion,opinion_sum");
}

TEST_CASE("run: reads edge-list datasets from disk") {
  const ScratchDir dir("dataset");
  {
    std::ofstream out(dir / "net.txt");
    out << "# five nodes, a ring with one chord\n";
    out << "0 1\n1 2\n2 3\n3 4\n4 0\n1 3\n";
  }

  const int code = run_cli("run --setting robust --dataset " + (dir / "net.txt").string() +
                           " --kg 2 --kb 1 --eps-l 0.3 --eps-o 0.1 --seed 3 --out-dir " +
                           (dir / "out").string());
  REQUIRE(code == 0);
  const json report = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report.at("network").at("nodes") == 5);
  CHECK(report.at("diagnostics").contains("method"));
  CHECK(report.at("diagnostics").contains("cut_rounds"));
}

TEST_CASE("config errors exit 2 before any solving starts") {
  const ScratchDir dir("config");
  CHECK(run_cli("run --setting no-such-setting --out-dir " + (dir / "a").string()) == 2);
  CHECK(run_cli("run --dataset /nonexistent/edges.txt --out-dir " + (dir / "b").string()) == 2);
  CHECK(run_cli("run --alpha -1 --out-dir " + (dir / "c").string()) == 2);
}

TEST_CASE("solver errors exit 3 and record the machine-readable code") {
  const ScratchDir dir("solver-error");
  const int code = run_cli("run --setting concave --t 1.0 --dataset karate --out-dir " +
                           (dir / "out").string());
  REQUIRE(code == 3);
  const json report = json::parse(slurp(dir / "out" / "report.json"));
  REQUIRE(report.contains("error"));
  CHECK(report.at("error").at("code") == "ConcavityDomain");
}

TEST_CASE("verify: the built-in cross-checks pass") {
  CHECK(run_cli("verify --suite dynamics") == 0);
  CHECK(run_cli("verify --suite strategies") == 0);
}

TEST_CASE("info: summarizes a dataset") {
  CHECK(run_cli("info --dataset karate") == 0);
}

}  // namespace
