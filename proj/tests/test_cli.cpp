// Copyright 2026 The shgaunt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "shgaunt/table_io.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = gsht::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "shgaunt_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(CliTables, WritesLoadableBinaryTable) {
  const fs::path file = scratch("t44.gsht");
  const CliResult r = run({"tables", "--n1", "4", "--n2", "4", "--basis", "real", "-o", file.string()});
  ASSERT_EQ(r.code, gsht::kExitOk) << r.err;
  EXPECT_NE(r.out.find("targets=81"), std::string::npos);
  EXPECT_NE(r.err.find("building real"), std::string::npos);
  const shg::GauntTable t = shg::load_table(file);
  EXPECT_EQ(t.size(), 81u);
  EXPECT_TRUE(t == shg::build_table(shg::Basis::real, 4, 4));
}

TEST(CliTables, BothBasesSplitBinaryFiles) {
  const fs::path file = scratch("both.gsht");
  const CliResult r = run({"tables", "--n1", "2", "--n2", "1", "--basis", "both", "-o", file.string()});
  ASSERT_EQ(r.code, gsht::kExitOk) << r.err;
  EXPECT_EQ(shg::load_table(scratch("both-complex.gsht")).basis(), shg::Basis::complex);
  EXPECT_EQ(shg::load_table(scratch("both-real.gsht")).basis(), shg::Basis::real);
}

TEST(CliTables, JsonToStdout) {
  const CliResult r = run({"tables", "--n1", "1", "--n2", "1", "--basis", "both", "--format", "json", "-o", "-"});
  ASSERT_EQ(r.code, gsht::kExitOk) << r.err;
  const auto start = r.out.find('{');
  ASSERT_NE(start, std::string::npos);
  const auto doc = nlohmann::json::parse(r.out.substr(start));
  EXPECT_EQ(doc["tables"].size(), 2u);
  EXPECT_EQ(doc["tables"][0]["targets"].size(), 9u);
}

TEST(CliTables, FastPathAgreesWithExact) {
  const fs::path exact = scratch("exact.gsht");
  const fs::path fast = scratch("fast.gsht");
  ASSERT_EQ(run({"tables", "--n1", "6", "--n2", "6", "--basis", "real", "-o", exact.string()}).code, 0);
  ASSERT_EQ(run({"tables", "--n1", "6", "--n2", "6", "--basis", "real", "--factorial-path", "fast", "-o",
                 fast.string()})
                .code,
            0);
  const shg::GauntTable a = shg::load_table(exact);
  const shg::GauntTable b = shg::load_table(fast);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t q = 0; q < a.size(); ++q) {
    ASSERT_EQ(a[q].nonzeros(), b[q].nonzeros()) << q;
    for (std::size_t i = 0; i < a[q].nonzeros(); ++i) {
      const double x = a[q].entries()[i].value;
      const double y = b[q].entries()[i].value;
      EXPECT_LE(std::abs(x - y), 1e-10 * std::abs(x));
    }
  }
}

TEST(CliTables, ConfigAndIoErrors) {
  EXPECT_EQ(run({"tables", "--n1", "2", "--n2", "2"}).code, gsht::kExitConfig);  // no output
  EXPECT_EQ(run({"tables", "--n1", "2", "--n2", "2", "--basis", "quaternion", "-o", "x"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"tables", "--n1", "31", "--n2", "0", "-o", "x"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"tables", "--n1", "-1", "--n2", "0", "-o", "x"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"tables", "--n1", "x", "--n2", "0", "-o", "x"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"tables", "--n1", "1", "--n2", "1", "-o", "-"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"tables", "--n1", "1", "--n2", "1", "-o", "/nonexistent/dir/t.gsht"}).code, gsht::kExitIo);
  EXPECT_EQ(run({"frobnicate"}).code, gsht::kExitConfig);
}

TEST(CliVerify, AllSuitesPass) {
  const CliResult r = run({"verify", "--n1", "2", "--n2", "2"});
  EXPECT_EQ(r.code, gsht::kExitOk) << r.out << r.err;
  for (const char* name : {"selection-rules", "symmetry", "unitarity", "gaunt-oracle", "multiplication", "applications"}) {
    EXPECT_NE(r.out.find(std::string("PASS ") + name), std::string::npos) << name;
  }
}

TEST(CliVerify, ToleranceBreachAndJson) {
  const CliResult r = run({"verify", "--suite", "gaunt-oracle", "--n1", "2", "--n2", "2", "--tolerance", "1e-30", "--json"});
  EXPECT_EQ(r.code, gsht::kExitToleranceBreach);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_FALSE(doc["pass"].get<bool>());
  EXPECT_EQ(doc["suites"][0]["suite"], "gaunt-oracle");
  EXPECT_GT(doc["suites"][0]["max_error"].get<double>(), 0.0);

  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"verify", "--tolerance", "0"}).code, gsht::kExitConfig);
}

TEST(CliDemo, EveryDemoMatchesItsOracle) {
  for (const auto& name : gsht::demo_names()) {
    const CliResult r = run({"demo", name, "--json"});
    ASSERT_EQ(r.code, gsht::kExitOk) << name << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["demo"], name);
    EXPECT_LE(doc["discrepancy"].get<double>(), 1e-6) << name;
  }
}

TEST(CliDemo, OptionsAndErrors) {
  const CliResult r = run({"demo", "intensity", "--direction", "1.0,2.0", "--order", "3"});
  ASSERT_EQ(r.code, gsht::kExitOk) << r.err;
  EXPECT_NE(r.out.find("angle_to_minus_u0"), std::string::npos);
  EXPECT_EQ(run({"demo", "nope"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"demo", "intensity", "--direction", "1.0"}).code, gsht::kExitConfig);
  EXPECT_EQ(run({"demo", "translate", "--kd", "-1"}).code, gsht::kExitConfig);
  EXPECT_THROW(gsht::run_demo("nope", {}), std::invalid_argument);
}

#ifdef GSHT_BINARY
std::string slurp(const fs::path& p) {
  const auto bytes = shg::read_bytes(p);
  return std::string(bytes.begin(), bytes.end());
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliBinary, ExitCodesFromProcess) {
  const std::string bin = GSHT_BINARY;
  EXPECT_EQ(shell(bin + " --help > /dev/null"), 0);
  EXPECT_EQ(shell(bin + " tables --n1 1 --n2 1 -o /nonexistent/dir/x 2> /dev/null"), 2);
  EXPECT_EQ(shell(bin + " demo nope 2> /dev/null"), 3);
  EXPECT_EQ(shell(bin + " verify --suite gaunt-oracle --n1 1 --n2 1 --tolerance 1e-30 > /dev/null 2>&1"), 1);
}

TEST(CliBinary, OutputIndependentOfThreadCount) {
  const std::string bin = GSHT_BINARY;
  const fs::path one = scratch("threads1.gsht");
  const fs::path four = scratch("threads4.gsht");
  ASSERT_EQ(shell("GSHT_THREADS=1 " + bin + " tables --n1 5 --n2 5 --basis real -o " + one.string() + " > /dev/null 2>&1"), 0);
  ASSERT_EQ(shell("GSHT_THREADS=4 " + bin + " tables --n1 5 --n2 5 --basis real -o " + four.string() + " > /dev/null 2>&1"), 0);
  EXPECT_EQ(slurp(one), slurp(four));
}
#endif

}  // namespace
