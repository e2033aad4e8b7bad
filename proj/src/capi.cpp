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

#include "tba/tba.h"

#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "tba/bit_engine.hpp"
#include "tba/count_lab.hpp"
#include "tba/error.hpp"
#include "tba/model_kit.hpp"
#include "tba/solver.hpp"

struct tba_options {
  tba::engine::EngineOptions engine;
};

struct tba_problem {
  tba::shell::Problem problem;
};

struct tba_report {
  tba::count::CountReport report;
};

namespace {

thread_local std::string last_error;

tba_status map_code(tba::ErrorCode code) {
  using tba::ErrorCode;
  switch (code) {
    case ErrorCode::kUsage: return TBA_ERR_USAGE;
    case ErrorCode::kParse:
    case ErrorCode::kArity:
    case ErrorCode::kFreeVariable:
    case ErrorCode::kUnbound: return TBA_ERR_PARSE;
    case ErrorCode::kCapExceeded: return TBA_ERR_CAP;
    case ErrorCode::kIo: return TBA_ERR_IO;
    case ErrorCode::kRange: return TBA_ERR_RANGE;
    case ErrorCode::kFunctionality:
    case ErrorCode::kGuard:
    case ErrorCode::kShape: return TBA_ERR_MODEL;
  }
  return TBA_ERR_INTERNAL;
}

template <class Fn>
tba_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return TBA_OK;
  } catch (const tba::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TBA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TBA_ERR_INTERNAL;
  }
}

tba_status null_argument(const char* what) {
  last_error = std::string(what) + " must not be null";
  return TBA_ERR_USAGE;
}

const tba::engine::EngineOptions& engine_of(const tba_options* options) {
  static const tba::engine::EngineOptions defaults;
  return options ? options->engine : defaults;
}

// Forwards stream output to a write callback in moderate pieces.
class CallbackBuf : public std::streambuf {
 public:
  CallbackBuf(tba_write_fn write, void* user) : write_(write), user_(user) {
    setp(buffer_, buffer_ + sizeof(buffer_));
  }
  ~CallbackBuf() override { sync(); }

 protected:
  int_type overflow(int_type ch) override {
    sync();
    if (ch != traits_type::eof()) {
      *pptr() = static_cast<char>(ch);
      pbump(1);
    }
    return ch == traits_type::eof() ? traits_type::not_eof(ch) : ch;
  }
  int sync() override {
    const auto n = static_cast<std::size_t>(pptr() - pbase());
    if (n) write_(pbase(), n, user_);
    setp(buffer_, buffer_ + sizeof(buffer_));
    return 0;
  }

 private:
  tba_write_fn write_;
  void* user_;
  char buffer_[1 << 14];
};

void write_string(tba_write_fn write, void* user, const std::string& s) {
  write(s.data(), s.size(), user);
}

}  // namespace

extern "C" {

const char* tba_version(void) { return "0.1.0"; }

const char* tba_last_error(void) { return last_error.c_str(); }

tba_status tba_options_create(tba_options** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new tba_options(); });
}

void tba_options_destroy(tba_options* options) { delete options; }

tba_status tba_options_set_chunk_bits(tba_options* options, int bits) {
  if (!options) return null_argument("options");
  if (bits < 0 || bits > tba::engine::kMaxVarsLimit) {
    last_error = "chunk bits must be between 0 and " + std::to_string(tba::engine::kMaxVarsLimit);
    return TBA_ERR_USAGE;
  }
  options->engine.log_chunk = bits;
  return TBA_OK;
}

tba_status tba_options_set_jobs(tba_options* options, unsigned jobs) {
  if (!options) return null_argument("options");
  options->engine.workers = jobs;
  return TBA_OK;
}

tba_status tba_options_set_max_vars(tba_options* options, int max_vars) {
  if (!options) return null_argument("options");
  if (max_vars < 0 || max_vars > tba::engine::kMaxVarsLimit) {
    last_error = "max-vars must be between 0 and " + std::to_string(tba::engine::kMaxVarsLimit);
    return TBA_ERR_USAGE;
  }
  options->engine.max_vars = max_vars;
  return TBA_OK;
}

tba_status tba_options_set_backend(tba_options* options, const char* backend) {
  if (!options) return null_argument("options");
  if (!backend) return null_argument("backend");
  const std::string name = backend;
  if (name == "bitparallel") options->engine.backend = tba::engine::Backend::kBitParallel;
  else if (name == "naive") options->engine.backend = tba::engine::Backend::kNaive;
  else {
    last_error = "unknown backend '" + name + "' (expected naive or bitparallel)";
    return TBA_ERR_USAGE;
  }
  return TBA_OK;
}

tba_status tba_problem_load_file(const char* path, tba_problem** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new tba_problem{tba::shell::problem_from_file(path)}; });
}

tba_status tba_problem_parse(const char* text, size_t size, tba_problem** out) {
  if (!text && size) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new tba_problem{tba::shell::problem_from_text(std::string_view(text ? text : "", size))};
  });
}

void tba_problem_destroy(tba_problem* problem) { delete problem; }

int tba_problem_is_theory(const tba_problem* problem) {
  return problem && problem->problem.theory ? 1 : 0;
}

size_t tba_problem_letter_count(const tba_problem* problem) {
  return problem ? problem->problem.letters.size() : 0;
}

size_t tba_problem_free_count(const tba_problem* problem) {
  if (!problem) return 0;
  std::size_t n = 0;
  for (const auto& l : problem->problem.letters) n += !problem->problem.assumptions.contains(l);
  return n;
}

tba_status tba_count(const tba_problem* problem, const tba_options* options, tba_write_fn write,
                     void* user) {
  if (!problem) return null_argument("problem");
  if (!write) return null_argument("write");
  return guarded([&] {
    const auto s = tba::shell::count_solutions(problem->problem, engine_of(options));
    write_string(write, user, tba::to_string(s.count));
  });
}

tba_status tba_solve_write(const tba_problem* problem, const tba_options* options,
                           tba_write_fn write, void* user) {
  if (!problem) return null_argument("problem");
  if (!write) return null_argument("write");
  return guarded([&] {
    CallbackBuf buf(write, user);
    std::ostream out(&buf);
    tba::shell::write_solutions(problem->problem, engine_of(options), out);
    out.flush();
  });
}

tba_status tba_solve_to_file(const tba_problem* problem, const tba_options* options,
                             const char* path, tba_write_fn write, void* user) {
  if (!problem) return null_argument("problem");
  if (!path) return null_argument("path");
  return guarded([&] {
    const auto s = tba::shell::write_solution_file(problem->problem, engine_of(options), path);
    if (write) write_string(write, user, tba::to_string(s.count));
  });
}

tba_status tba_write_models(const tba_problem* problem, const tba_options* options,
                            tba_write_fn write, void* user) {
  if (!problem) return null_argument("problem");
  if (!write) return null_argument("write");
  return guarded([&] {
    CallbackBuf buf(write, user);
    std::ostream out(&buf);
    tba::shell::write_models(problem->problem, engine_of(options), out);
    out.flush();
  });
}

tba_status tba_run_tba(const tba_problem* problem, const tba_options* options, int keep_models,
                       tba_report** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  *out = nullptr;
  if (!problem->problem.theory) {
    last_error = "the tba procedure needs a theory file";
    return TBA_ERR_USAGE;
  }
  return guarded([&] {
    const auto& file = *problem->problem.theory;
    tba::count::CountOptions opts;
    opts.engine = engine_of(options);
    opts.definable_constants = file.definable_constants;
    opts.keep_models = keep_models != 0;
    auto report = tba::count::tba_count(file.ground(), file.partition_spec(), {}, opts);
    *out = new tba_report{std::move(report)};
  });
}

void tba_report_destroy(tba_report* report) { delete report; }

tba_status tba_report_write_table(const tba_report* report, tba_write_fn write, void* user) {
  if (!report) return null_argument("report");
  if (!write) return null_argument("write");
  return guarded([&] { write_string(write, user, report->report.to_table()); });
}

tba_status tba_report_write_models(const tba_report* report, tba_write_fn write, void* user) {
  if (!report) return null_argument("report");
  if (!write) return null_argument("write");
  return guarded([&] {
    std::ostringstream out;
    std::size_t k = 0;
    for (const auto& row : report->report.rows)
      for (const auto& m : row.representatives)
        out << "# class " << ++k << " partition " << row.partition.str() << "\n"
            << tba::models::format_model(m);
    write_string(write, user, out.str());
  });
}

tba_status tba_report_labeled_total(const tba_report* report, tba_write_fn write, void* user) {
  if (!report) return null_argument("report");
  if (!write) return null_argument("write");
  return guarded([&] { write_string(write, user, tba::to_string(report->report.labeled_total)); });
}

tba_status tba_report_unlabeled_total(const tba_report* report, tba_write_fn write, void* user) {
  if (!report) return null_argument("report");
  if (!write) return null_argument("write");
  return guarded([&] { write_string(write, user, tba::to_string(report->report.unlabeled_total)); });
}

}  // extern "C"
