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

#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tba/big_int.hpp"
#include "tba/bit_engine.hpp"
#include "tba/bool_term.hpp"
#include "tba/theory_file.hpp"

namespace tba::shell {

// A loaded input: either a script or a theory file, reduced to one term.
struct Problem {
  BoolTerm theta;
  Assignment assumptions;
  std::vector<LetterName> letters;  // canonical order
  std::optional<TheoryFile> theory;
};

Problem problem_from_text(std::string_view text);
// Throws Error(kIo) when the file cannot be read.
Problem problem_from_file(const std::string& path);

struct SolveSummary {
  BigInt count = 0;
  std::vector<LetterName> free;
  engine::EngineStats stats;
};

// Letters not fixed by the assumptions, and theta with the assumptions
// substituted and reduced.
struct ReducedProblem {
  BoolTerm term;
  std::vector<LetterName> free;
};
ReducedProblem reduce_problem(const Problem& problem);

SolveSummary count_solutions(const Problem& problem, const engine::EngineOptions& options);

// Writes the solution file: four header lines, then one row per model over
// every letter, ascending by free-valuation index.
SolveSummary write_solutions(const Problem& problem, const engine::EngineOptions& options,
                             std::ostream& out);

// Decoded tables of every model; theory problems only.
SolveSummary write_models(const Problem& problem, const engine::EngineOptions& options,
                          std::ostream& out);

// Solution file to `path`, replacing it.
SolveSummary write_solution_file(const Problem& problem, const engine::EngineOptions& options,
                                 const std::string& path);

}  // namespace tba::shell
