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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "tba/tba.h"

namespace {

void append(const char* data, size_t size, void* user) {
  static_cast<std::string*>(user)->append(data, size);
}

std::string fixture(const std::string& name) { return std::string(TBA_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Handles {
  tba_options* options = nullptr;
  tba_problem* problem = nullptr;
  ~Handles() {
    tba_problem_destroy(problem);
    tba_options_destroy(options);
  }
};

TEST(CApi, Version) { EXPECT_STREQ(tba_version(), "0.1.0"); }

TEST(CApi, CountFromText) {
  Handles h;
  const std::string text = "e1 = x ^ y ^ ~z ^ u\ne2 = ~((x | y & z) ^ u)\n";
  ASSERT_EQ(tba_problem_parse(text.data(), text.size(), &h.problem), TBA_OK);
  EXPECT_EQ(tba_problem_is_theory(h.problem), 0);
  EXPECT_EQ(tba_problem_letter_count(h.problem), 4u);
  EXPECT_EQ(tba_problem_free_count(h.problem), 4u);
  std::string count;
  ASSERT_EQ(tba_count(h.problem, nullptr, append, &count), TBA_OK);
  EXPECT_EQ(count, "3");
}

TEST(CApi, SolveToFileMatchesStream) {
  Handles h;
  ASSERT_EQ(tba_options_create(&h.options), TBA_OK);
  ASSERT_EQ(tba_options_set_jobs(h.options, 0), TBA_OK);
  ASSERT_EQ(tba_options_set_chunk_bits(h.options, 4), TBA_OK);
  ASSERT_EQ(tba_problem_load_file(fixture("SO4.txt").c_str(), &h.problem), TBA_OK);
  const std::string path = ::testing::TempDir() + "capi_so4.txt";
  std::string count;
  ASSERT_EQ(tba_solve_to_file(h.problem, h.options, path.c_str(), append, &count), TBA_OK);
  std::string streamed;
  ASSERT_EQ(tba_solve_write(h.problem, h.options, append, &streamed), TBA_OK);
  EXPECT_EQ(slurp(path), streamed);
  EXPECT_NE(streamed.find("# count: " + count + "\n"), std::string::npos);
  std::remove(path.c_str());
}

TEST(CApi, TheoryReport) {
  Handles h;
  ASSERT_EQ(tba_problem_load_file(fixture("bounded_poset4.theory").c_str(), &h.problem), TBA_OK);
  EXPECT_EQ(tba_problem_is_theory(h.problem), 1);
  tba_report* report = nullptr;
  ASSERT_EQ(tba_run_tba(h.problem, nullptr, 1, &report), TBA_OK);
  std::string labeled, unlabeled, table, models;
  EXPECT_EQ(tba_report_labeled_total(report, append, &labeled), TBA_OK);
  EXPECT_EQ(tba_report_unlabeled_total(report, append, &unlabeled), TBA_OK);
  EXPECT_EQ(tba_report_write_table(report, append, &table), TBA_OK);
  EXPECT_EQ(tba_report_write_models(report, append, &models), TBA_OK);
  EXPECT_EQ(labeled, "36");
  EXPECT_EQ(unlabeled, "2");
  EXPECT_EQ(table.rfind("# tba-report v1\n", 0), 0u);
  EXPECT_NE(models.find("# class 2"), std::string::npos);
  tba_report_destroy(report);
}

TEST(CApi, ErrorStatuses) {
  tba_problem* problem = nullptr;
  EXPECT_EQ(tba_problem_load_file("/nonexistent/x.txt", &problem), TBA_ERR_IO);
  EXPECT_EQ(problem, nullptr);
  EXPECT_NE(std::string(tba_last_error()).find("/nonexistent/x.txt"), std::string::npos);

  const std::string bad = "f = (a | b\n";
  EXPECT_EQ(tba_problem_parse(bad.data(), bad.size(), &problem), TBA_ERR_PARSE);
  EXPECT_NE(std::string(tba_last_error()).find("line "), std::string::npos);

  EXPECT_EQ(tba_problem_parse(nullptr, 0, nullptr), TBA_ERR_USAGE);

  Handles h;
  ASSERT_EQ(tba_options_create(&h.options), TBA_OK);
  EXPECT_EQ(tba_options_set_backend(h.options, "gpu"), TBA_ERR_USAGE);
  EXPECT_EQ(tba_options_set_max_vars(h.options, 41), TBA_ERR_USAGE);
  ASSERT_EQ(tba_options_set_max_vars(h.options, 3), TBA_OK);
  ASSERT_EQ(tba_problem_load_file(fixture("SO4.txt").c_str(), &h.problem), TBA_OK);
  std::string out;
  EXPECT_EQ(tba_count(h.problem, h.options, append, &out), TBA_ERR_CAP);
  EXPECT_TRUE(out.empty());
  tba_report* report = nullptr;
  EXPECT_EQ(tba_run_tba(h.problem, h.options, 0, &report), TBA_ERR_USAGE);
  EXPECT_EQ(tba_write_models(h.problem, nullptr, append, &out), TBA_ERR_USAGE);
}

TEST(CApi, LastErrorClearsOnSuccess) {
  tba_problem* problem = nullptr;
  EXPECT_NE(tba_problem_load_file("/nonexistent/x.txt", &problem), TBA_OK);
  const std::string ok = "f = a\n";
  ASSERT_EQ(tba_problem_parse(ok.data(), ok.size(), &problem), TBA_OK);
  EXPECT_STREQ(tba_last_error(), "");
  tba_problem_destroy(problem);
}

}  // namespace
