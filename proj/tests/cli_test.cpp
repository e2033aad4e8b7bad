// Copyright 2026 The TBA Authors
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string kBinary = TBA_CLI_PATH;
const std::string kData = TBA_TEST_DATA;
const std::string kGolden = TBA_GOLDEN_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string capture = ::testing::TempDir() + "cli_stdout.txt";
  const std::string cmd = "'" + kBinary + "' " + args + " > '" + capture + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(capture);
  std::remove(capture.c_str());
  return r;
}

std::string temp_file(const std::string& name) { return ::testing::TempDir() + name; }

struct GoldenCase {
  std::string input;
  std::string golden;
};

class GoldenTest : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(GoldenTest, ByteIdenticalAcrossSettings) {
  const auto& c = GetParam();
  const std::string want = slurp(kGolden + "/" + c.golden);
  ASSERT_FALSE(want.empty());
  const std::vector<std::string> settings = {
      "",
      "--jobs 1",
      "--jobs 2",
      "--jobs max",
      "--chunk-bits 0",
      "--chunk-bits 3 --jobs max",
      "--chunk-bits 40",
      "--backend naive --jobs max",
      "--backend bitparallel --chunk-bits 5",
  };
  for (int repeat = 0; repeat < 2; ++repeat) {
    for (const auto& flags : settings) {
      const std::string out = temp_file("golden_out.txt");
      const CliResult r = run("solve --all '" + kData + "/" + c.input + "' '" + out + "' " + flags);
      EXPECT_EQ(r.exit_code, 0) << flags;
      EXPECT_EQ(slurp(out), want) << c.input << " " << flags;
      std::remove(out.c_str());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, GoldenTest,
                         ::testing::Values(GoldenCase{"SO4.txt", "SO4_out.txt"},
                                           GoldenCase{"BAequ4_in.txt", "BAequ4_out.txt"}),
                         [](const auto& info) {
                           return info.param.golden.substr(0, info.param.golden.find('_'));
                         });

TEST(Cli, BooleanEquationCount) {
  const CliResult r = run("solve --count '" + kData + "/BAequ4_in.txt'");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "3\n");
}

TEST(Cli, DefaultOutputName) {
  const std::string dir = temp_file("cli_default_dir");
  ASSERT_EQ(std::system(("mkdir -p '" + dir + "'").c_str()), 0);
  const std::string cmd = "cd '" + dir + "' && '" + kBinary + "' solve --all '" + kData +
                          "/BAequ4_in.txt' > /dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(dir + "/out.txt"), slurp(kGolden + "/BAequ4_out.txt"));
  EXPECT_EQ(std::system(("rm -rf '" + dir + "'").c_str()), 0);
}

TEST(Cli, TbaReportMatchesGolden) {
  const CliResult r = run("tba '" + kData + "/bounded_poset4.theory' --jobs max");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, slurp(kGolden + "/bounded_poset4_report.txt"));
}

TEST(Cli, ModelsFlag) {
  const CliResult r = run("tba '" + kData + "/poset3.theory' --models");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("# l: 19\n"), std::string::npos);
  EXPECT_NE(r.out.find("# class 5 "), std::string::npos);
  EXPECT_EQ(r.out.find("# class 6 "), std::string::npos);
}

TEST(Cli, JobsFromEnvironment) {
  const std::string out = temp_file("env_out.txt");
  const std::string cmd = "TBA_JOBS=max '" + kBinary + "' solve --all '" + kData +
                          "/SO4.txt' '" + out + "' > /dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(out), slurp(kGolden + "/SO4_out.txt"));
  std::remove(out.c_str());
  const std::string bad = "TBA_JOBS=lots '" + kBinary + "' solve --count '" + kData +
                          "/SO4.txt' > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("solve --all missing.txt").exit_code, 1);
  EXPECT_EQ(run("solve '" + kData + "/SO4.txt'").exit_code, 1);
  EXPECT_EQ(run("bogus").exit_code, 1);
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("solve --count --jobs zero '" + kData + "/SO4.txt'").exit_code, 1);
  EXPECT_EQ(run("solve --count --backend gpu '" + kData + "/SO4.txt'").exit_code, 1);
  EXPECT_EQ(run("solve --count --max-vars 41 '" + kData + "/SO4.txt'").exit_code, 1);
  EXPECT_EQ(run("solve --count --max-vars 11 '" + kData + "/SO4.txt'").exit_code, 2);
  EXPECT_EQ(run("solve --count --max-vars 12 '" + kData + "/SO4.txt'").exit_code, 0);
  EXPECT_EQ(run("tba '" + kData + "/SO4.txt'").exit_code, 1);
  EXPECT_EQ(run("solve --count --models '" + kData + "/SO4.txt'").exit_code, 1);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST(Cli, ContradictionIsNotAnError) {
  const std::string in = temp_file("contra.txt");
  std::ofstream(in) << "f = a & ~a\n";
  const CliResult r = run("solve --count '" + in + "'");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "0\n");
  std::remove(in.c_str());
}

}  // namespace
