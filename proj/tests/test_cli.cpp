// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Drives the ric_sim executable end to end.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string &args) {
  const std::string cmd = std::string(RIC_SIM_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("ric_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("selftest passes") { CHECK(run("selftest") == 0); }

TEST_CASE("sweep is byte-identical across runs") {
  const fs::path dir = scratch("sweep");
  std::ofstream(dir / "run.cfg") << "preset = 3x3_1_4\nsnr = 0, 12\ntrials = 2x2\niters = 10\n";
  const std::string cfg = (dir / "run.cfg").string();
  REQUIRE(run("sweep --config " + cfg + " --seed 42 --out " + (dir / "a").string()) == 0);
  REQUIRE(run("sweep --config " + cfg + " --seed 42 --out " + (dir / "b").string()) == 0);
  const std::string a = slurp(dir / "a" / "sweep.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b" / "sweep.csv"));
  REQUIRE(run("sweep --config " + cfg + " --seed 43 --out " + (dir / "c").string()) == 0);
  CHECK(a != slurp(dir / "c" / "sweep.csv"));
}

TEST_CASE("approx writes the documented columns") {
  const fs::path dir = scratch("approx");
  std::ofstream(dir / "s005.cfg") << "sigma2 = 0.05\nsnr = 0\ntrials = 2x2\niters = 10\n";
  REQUIRE(run("approx --config " + (dir / "s005.cfg").string() + " --out " + dir.string()) == 0);
  const std::string text = slurp(dir / "approx.csv");
  CHECK(text.rfind("snr_db,sigma2,theoretical,numerical,pct_error\n", 0) == 0);
}

TEST_CASE("flags override the file and the environment picks the out dir") {
  const fs::path dir = scratch("env");
  std::ofstream(dir / "f.cfg") << "snr = 0, 4, 8\ntrials = 1x1\niters = 5\nalgorithms = EM\n";
  const std::string cmd = "RIC_OUT_DIR=" + dir.string() + " " + std::string(RIC_SIM_PATH) +
                          " variance-table --config " + (dir / "f.cfg").string() +
                          " --snr 4 --trials 1x2 > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const std::string text = slurp(dir / "variance_table.csv");
  CHECK(text.find("\"(3x3,1)^4\",EM,4,avg_sinr_variance,") != std::string::npos);
  CHECK(text.find(",EM,0,") == std::string::npos);
}

TEST_CASE("bad input exits nonzero") {
  const fs::path dir = scratch("bad");
  std::ofstream(dir / "bad.cfg") << "K=3\nunknown_key=2\n";
  CHECK(run("sweep --config " + (dir / "bad.cfg").string() + " --out " + dir.string()) != 0);
  CHECK(run("sweep --scenario 7x7 --out " + dir.string()) != 0);
  CHECK(run("launch") != 0);
}

} // TEST_SUITE
