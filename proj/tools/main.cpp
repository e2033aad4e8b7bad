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

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "tba/tba.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCap = 2;

struct CommonFlags {
  int chunk_bits = -1;
  std::string jobs;
  int max_vars = 30;
  std::string backend = "bitparallel";
  bool models = false;
};

void add_common(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("--chunk-bits", flags.chunk_bits, "log2 of the valuations per chunk")
      ->check(CLI::Range(0, 40));
  cmd.add_option("--jobs", flags.jobs, "worker threads, an integer or 'max' (env TBA_JOBS)");
  cmd.add_option("--max-vars", flags.max_vars, "cap on free letters")
      ->check(CLI::Range(0, 40))
      ->capture_default_str();
  cmd.add_option("--backend", flags.backend, "evaluation backend")
      ->check(CLI::IsMember({"naive", "bitparallel"}))
      ->capture_default_str();
  cmd.add_flag("--models", flags.models, "print decoded models (theory files)");
}

void write_stdout(const char* data, size_t size, void*) { std::fwrite(data, 1, size, stdout); }

void write_string(const char* data, size_t size, void* user) {
  static_cast<std::string*>(user)->append(data, size);
}

int fail(tba_status status) {
  std::cerr << "error: " << tba_last_error() << "\n";
  return status == TBA_ERR_CAP ? kExitCap : kExitError;
}

// Returns false on a malformed value.
bool parse_jobs(const std::string& text, unsigned& out) {
  if (text == "max") {
    out = 0;
    return true;
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) return false;
  const unsigned long v = std::strtoul(text.c_str(), nullptr, 10);
  if (v == 0 || v > 4096) return false;
  out = static_cast<unsigned>(v);
  return true;
}

using OptionsPtr = std::unique_ptr<tba_options, decltype(&tba_options_destroy)>;
using ProblemPtr = std::unique_ptr<tba_problem, decltype(&tba_problem_destroy)>;
using ReportPtr = std::unique_ptr<tba_report, decltype(&tba_report_destroy)>;

int make_options(const CommonFlags& flags, OptionsPtr& out) {
  tba_options* raw = nullptr;
  if (tba_status s = tba_options_create(&raw); s != TBA_OK) return fail(s);
  out.reset(raw);

  std::string jobs_text = flags.jobs;
  if (jobs_text.empty()) {
    const char* env = std::getenv("TBA_JOBS");
    jobs_text = env && *env ? env : "1";
  }
  unsigned jobs = 1;
  if (!parse_jobs(jobs_text, jobs)) {
    std::cerr << "error: --jobs expects a positive integer or 'max', got '" << jobs_text << "'\n";
    return kExitError;
  }
  tba_status s = tba_options_set_jobs(raw, jobs);
  if (s == TBA_OK && flags.chunk_bits >= 0) s = tba_options_set_chunk_bits(raw, flags.chunk_bits);
  if (s == TBA_OK) s = tba_options_set_max_vars(raw, flags.max_vars);
  if (s == TBA_OK) s = tba_options_set_backend(raw, flags.backend.c_str());
  return s == TBA_OK ? kExitOk : fail(s);
}

int load(const std::string& path, ProblemPtr& out) {
  tba_problem* raw = nullptr;
  const tba_status s = tba_problem_load_file(path.c_str(), &raw);
  out.reset(raw);
  return s == TBA_OK ? kExitOk : fail(s);
}

int run_solve(bool all, const std::string& in, const std::string& out_path,
              const CommonFlags& flags) {
  OptionsPtr options(nullptr, tba_options_destroy);
  if (int rc = make_options(flags, options)) return rc;
  ProblemPtr problem(nullptr, tba_problem_destroy);
  if (int rc = load(in, problem)) return rc;
  if (flags.models && !tba_problem_is_theory(problem.get())) {
    std::cerr << "error: --models needs a theory file\n";
    return kExitError;
  }

  std::string count;
  const tba_status s =
      all ? tba_solve_to_file(problem.get(), options.get(), out_path.c_str(), write_string, &count)
          : tba_count(problem.get(), options.get(), write_string, &count);
  if (s != TBA_OK) return fail(s);
  if (all)
    std::cout << count << " solution(s) written to " << out_path << "\n";
  else
    std::cout << count << "\n";
  std::cout.flush();

  if (flags.models) {
    if (tba_status s = tba_write_models(problem.get(), options.get(), write_stdout, nullptr);
        s != TBA_OK)
      return fail(s);
  }
  return kExitOk;
}

int run_tba(const std::string& in, const CommonFlags& flags) {
  OptionsPtr options(nullptr, tba_options_destroy);
  if (int rc = make_options(flags, options)) return rc;
  ProblemPtr problem(nullptr, tba_problem_destroy);
  if (int rc = load(in, problem)) return rc;
  if (!tba_problem_is_theory(problem.get())) {
    std::cerr << "error: " << in << " is not a theory file\n";
    return kExitError;
  }
  tba_report* raw = nullptr;
  const tba_status s = tba_run_tba(problem.get(), options.get(), flags.models ? 1 : 0, &raw);
  ReportPtr report(raw, tba_report_destroy);
  if (s != TBA_OK) return fail(s);
  if (tba_status w = tba_report_write_table(report.get(), write_stdout, nullptr); w != TBA_OK)
    return fail(w);
  if (flags.models) {
    if (tba_status w = tba_report_write_models(report.get(), write_stdout, nullptr); w != TBA_OK)
      return fail(w);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive Boolean and finite-model counting tool"};
  app.set_version_flag("--version", std::string(tba_version()));
  app.require_subcommand(1);

  CommonFlags solve_flags;
  bool all = false;
  bool count = false;
  std::string in;
  std::string out = "out.txt";
  auto* solve = app.add_subcommand("solve", "solve a script or theory file");
  auto* all_flag = solve->add_flag("--all", all, "write every solution to the output file");
  auto* count_flag = solve->add_flag("--count", count, "print only the number of solutions");
  all_flag->excludes(count_flag);
  solve->add_option("input", in, "script or theory file")->required();
  auto* out_opt = solve->add_option("output", out, "solution file (with --all)")->capture_default_str();
  out_opt->excludes(count_flag);
  add_common(*solve, solve_flags);

  CommonFlags tba_flags;
  std::string theory;
  auto* tba_cmd = app.add_subcommand("tba", "count models of a theory by layered partitions");
  tba_cmd->add_option("theory", theory, "theory file")->required();
  add_common(*tba_cmd, tba_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  if (solve->parsed()) {
    if (!all && !count) {
      std::cerr << "error: solve needs --all or --count\n";
      return kExitError;
    }
    return run_solve(all, in, out, solve_flags);
  }
  return run_tba(theory, tba_flags);
}
