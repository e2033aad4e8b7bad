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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tba/big_int.hpp"
#include "tba/bit_engine.hpp"
#include "tba/bool_term.hpp"
#include "tba/fol.hpp"
#include "tba/model_kit.hpp"

namespace tba::count {

// Weak composition of n into m parts with consecutive blocks: block i is
// [sizes[0] + .. + sizes[i-1], sizes[0] + .. + sizes[i]).
class CPartition {
 public:
  explicit CPartition(std::vector<int> sizes);

  int n() const { return n_; }
  int m() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  // Half-open element range of block i.
  std::pair<int, int> block(int i) const;
  // Block holding element x.
  int block_of(int x) const;
  // "(1,2,1,0)"
  std::string str() const;

  friend bool operator==(const CPartition&, const CPartition&) = default;

 private:
  int n_ = 0;
  std::vector<int> sizes_;
  std::vector<int> starts_;
};

// Lexicographic order of the size tuple, (0,..,0,n) first.
void enumerate_c_partitions(int n, int m, const std::function<void(const CPartition&)>& visit);
std::vector<CPartition> c_partitions(int n, int m);
// sum_{k=1..m} C(m,k) C(n-1,k-1)
BigInt count_c_partitions(int n, int m);

// Constraint S_ij(x, y) for x in layer i, y in layer j, i <= j.
enum class Orientation { kFree, kHolds, kHoldsReversed, kFails, kFailsReversed };

std::string to_string(Orientation o);

class GoodPartitionSpec {
 public:
  // Each layer formula has `variable` as its only free variable.
  explicit GoodPartitionSpec(std::vector<fol::FolFormula> layers, std::string variable = "x");

  int m() const { return static_cast<int>(layers_.size()); }
  const std::vector<fol::FolFormula>& layers() const { return layers_; }
  const std::string& variable() const { return variable_; }

  // Requires i <= j.
  void set_orientation(int i, int j, Orientation o);
  Orientation orientation(int i, int j) const;

 private:
  std::vector<fol::FolFormula> layers_;
  std::string variable_;
  std::vector<Orientation> table_;
};

// Single layer `true`: the whole domain, nothing oriented.
GoodPartitionSpec trivial_partition_spec();

// The binary relation of a {R} signature; throws Error(kShape) otherwise.
const fol::Symbol& single_binary_relation(const fol::Signature& signature);

// Letters fixed by the orientation table for distinct pairs (i, j) with
// i in X_k, j in X_l, k <= l.
Assignment kill_for_partition(const GoodPartitionSpec& spec, const CPartition& x,
                              const fol::PropTheory& theory);

// n (n - 1) .. (n - k + 1)
BigInt definable_constants_factor(int k, int n);

// True iff {a : model |= layer_i(a)} is block i of x for every i.
bool defines_partition(const GoodPartitionSpec& spec, const models::LabeledModel& model,
                       const CPartition& x);

struct PartitionRow {
  CPartition partition{std::vector<int>{0}};
  bool conflict = false;  // kills contradict the base assumptions
  int free_letters = 0;
  BigInt labeled = 0;      // |K_X|
  BigInt unlabeled = 0;    // kappa_X
  BigInt multiplicity = 1;
  BigInt contribution = 0;
  std::vector<models::LabeledModel> representatives;  // canonical forms
};

struct CountReport {
  int n = 0;
  BigInt constants_factor = 1;
  std::vector<PartitionRow> rows;
  BigInt labeled_total = 0;    // l
  BigInt unlabeled_total = 0;  // kappa

  std::string to_table() const;
};

struct CountOptions {
  engine::EngineOptions engine;
  int definable_constants = 0;
  bool keep_models = false;
};

// Throws Error(kCapExceeded) naming the first partition whose free-letter
// count exceeds the cap.
CountReport tba_count(const fol::PropTheory& theory, const GoodPartitionSpec& spec,
                      const Assignment& base_assumptions, const CountOptions& options = {});

// Layers theta_0 (least element), theta_1, .. (minimal among the elements
// not yet placed), one per element of I_n.
GoodPartitionSpec poset_layer_spec(int n, const std::string& relation = "R");
// Reflexivity plus 0 least and n-1 greatest: 5n-6 letters.
Assignment poset_base_kills(int n, const std::string& relation = "R");
// Compositions of the n-2 middle elements.
BigInt poset_cpartition_count(int n);

}  // namespace tba::count
