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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tba/bool_term.hpp"
#include "tba/count_lab.hpp"
#include "tba/fol.hpp"

namespace tba::shell {

struct TheoryFile {
  int n = 0;
  fol::Signature signature;
  std::vector<fol::NamedFormula> axioms;
  Assignment assumptions;
  // Empty means the single trivial layer.
  std::optional<count::GoodPartitionSpec> partition;
  int definable_constants = 0;

  fol::PropTheory ground() const;
  count::GoodPartitionSpec partition_spec() const;
};

// True when the first statement is a rel/fun/const declaration.
bool looks_like_theory(std::string_view text);

// Throws Error(kParse) with "line L, column C:" on malformed input.
TheoryFile parse_theory(std::string_view text);

}  // namespace tba::shell
