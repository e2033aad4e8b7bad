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

#include "tba/solver.hpp"

#include <fstream>
#include <sstream>

#include "tba/error.hpp"
#include "tba/model_kit.hpp"
#include "tba/script.hpp"

namespace tba::shell {

Problem problem_from_text(std::string_view text) {
  Problem p;
  if (looks_like_theory(text)) {
    TheoryFile file = parse_theory(text);
    fol::PropTheory theory = file.ground();
    p.theta = theory.theta();
    p.assumptions = theory.assumptions;
    p.letters = theory.letters;
    p.theory = std::move(file);
    return p;
  }
  Expansion e = expand_script(parse_script(text));
  p.theta = e.theta;
  p.assumptions = std::move(e.assumptions);
  p.letters = e.letters.letters();
  return p;
}

Problem problem_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return problem_from_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

ReducedProblem reduce_problem(const Problem& problem) {
  ReducedProblem r;
  r.term = reduce_constants(substitute(problem.theta, problem.assumptions));
  for (const auto& l : problem.letters)
    if (!problem.assumptions.contains(l)) r.free.push_back(l);
  return r;
}

SolveSummary count_solutions(const Problem& problem, const engine::EngineOptions& options) {
  const ReducedProblem r = reduce_problem(problem);
  SolveSummary s;
  s.free = r.free;
  auto result = engine::count_models(r.term, r.free, options);
  s.count = result.model_count;
  s.stats = result.stats;
  return s;
}

namespace {

std::string join_letters(const std::vector<LetterName>& letters) {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += letters[i].str();
  }
  return out;
}

// Calls visit(row) for every model as a 0/1 string over all letters.
template <class Visit>
SolveSummary each_row(const Problem& problem, const engine::EngineOptions& options,
                      const std::function<void(const SolveSummary&)>& header, Visit&& visit) {
  const ReducedProblem r = reduce_problem(problem);
  SolveSummary s;
  s.free = r.free;
  std::string row(problem.letters.size(), '0');
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < problem.letters.size(); ++i) {
    auto it = problem.assumptions.find(problem.letters[i]);
    if (it != problem.assumptions.end()) {
      row[i] = it->second ? '1' : '0';
    } else {
      slots.push_back(i);
    }
  }
  const std::size_t v = slots.size();
  auto emit = [&](std::uint64_t index) {
    for (std::size_t i = 0; i < v; ++i) row[slots[i]] = ((index >> (v - 1 - i)) & 1u) ? '1' : '0';
    visit(row);
    return true;
  };
  if (static_cast<int>(v) <= engine::kMaterializeLimit) {
    auto full = engine::eval_full(r.term, r.free, options);
    s.count = full.dnf.model_count();
    s.stats = full.stats;
    header(s);
    const auto words = full.dnf.bits().words();
    for (std::uint64_t w = 0; w < words.size(); ++w)
      for (std::uint64_t word = words[w]; word; word &= word - 1)
        emit((w << engine::kLogWordBits) + std::countr_zero(word));
  } else {
    auto counted = engine::count_models(r.term, r.free, options);
    s.count = counted.model_count;
    header(s);
    s.stats = engine::for_each_model(r.term, r.free, options, emit);
    s.stats.elapsed_seconds += counted.stats.elapsed_seconds;
  }
  return s;
}

}  // namespace

SolveSummary write_solutions(const Problem& problem, const engine::EngineOptions& options,
                             std::ostream& out) {
  auto header = [&](const SolveSummary& s) {
    out << "# tba-solutions v1\n";
    out << "# letters: " << join_letters(problem.letters) << "\n";
    out << "# free: " << join_letters(s.free) << "\n";
    out << "# count: " << s.count << "\n";
  };
  return each_row(problem, options, header, [&](const std::string& row) { out << row << '\n'; });
}

SolveSummary write_models(const Problem& problem, const engine::EngineOptions& options,
                          std::ostream& out) {
  if (!problem.theory) throw Error(ErrorCode::kUsage, "model tables need a theory file");
  const auto& sig = problem.theory->signature;
  const int n = problem.theory->n;
  std::uint64_t k = 0;
  return each_row(problem, options, [](const SolveSummary&) {}, [&](const std::string& row) {
    Valuation mu;
    for (std::size_t i = 0; i < row.size(); ++i) mu.emplace(problem.letters[i], row[i] == '1');
    out << "# model " << ++k << "\n" << models::format_model(models::decode_model(mu, sig, n));
  });
}

SolveSummary write_solution_file(const Problem& problem, const engine::EngineOptions& options,
                                 const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  SolveSummary s = write_solutions(problem, options, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
  return s;
}

}  // namespace tba::shell
