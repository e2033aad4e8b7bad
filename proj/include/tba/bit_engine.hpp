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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tba/big_int.hpp"
#include "tba/bool_term.hpp"

namespace tba::engine {

inline constexpr int kLogWordBits = 6;
inline constexpr int kWordBits = 1 << kLogWordBits;
// Default chunk: 64 machine words, i.e. 2^12 valuations.
inline constexpr int kDefaultLogChunk = 12;
inline constexpr int kDefaultMaxVars = 30;
inline constexpr int kMaxVarsLimit = 40;
// eval_full materializes the whole result vector only up to this many
// variables (2^28 bits = 32 MiB); beyond it use count_models/for_each_model.
inline constexpr int kMaterializeLimit = 28;

// Packed bit array; bit i lives in word i/64 at position i%64.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::uint64_t size);
  // Characters '0'/'1', leftmost is bit 0.
  static BitVector from_string(std::string_view bits);

  std::uint64_t size() const { return size_; }
  bool get(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint64_t i, bool bit);
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }
  std::uint64_t popcount() const;
  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Rows of the matrix whose columns are the v-bit expansions of 0..2^v-1,
// most significant bit in row 1.
struct FreeVectorScheme {
  int v = 0;
};

// (j >> (v - i)) & 1 for 1 <= i <= v, 0 <= j < 2^v.
bool free_vector_bit(const FreeVectorScheme& scheme, int i, std::uint64_t j);
BitVector free_vector(const FreeVectorScheme& scheme, int i);

// A term lowered to a stack program over word registers. Variables take
// their position in `order` (1-based) under the free-vector convention.
class CompiledTerm {
 public:
  CompiledTerm(const BoolTerm& term, std::span<const LetterName> order);

  int var_count() const { return var_count_; }
  std::size_t node_count() const { return node_count_; }

  // Evaluates global result words [first_word, first_word + out.size()).
  // When var_count() < 6 only the low 2^v bits of word 0 are meaningful;
  // the rest are cleared.
  void eval_words(std::uint64_t first_word, std::span<std::uint64_t> out) const;

 private:
  enum class Code : std::uint8_t { kVar, kZero, kOne, kNot, kAnd, kOr, kXor, kImplies, kIff };
  struct Instr {
    Code code;
    std::uint32_t arg;
  };

  void emit(const BoolTerm& t, std::size_t depth);

  std::vector<Instr> program_;
  std::vector<LetterName> order_;
  std::vector<std::pair<LetterName, std::uint32_t>> lookup_;
  int var_count_ = 0;
  std::size_t node_count_ = 0;
  std::size_t max_depth_ = 0;
};

// Block j of size 2^k: bit r is the term's value at valuation j*2^k + r.
struct Chunk {
  std::uint64_t index = 0;
  int log_size = 0;
  std::vector<std::uint64_t> words;

  bool bit(std::uint64_t r) const { return (words[r >> 6] >> (r & 63)) & 1u; }
  std::string to_string() const;
};

Chunk eval_chunk(const CompiledTerm& term, std::uint64_t j, int k);
Chunk eval_chunk(const BoolTerm& term, std::span<const LetterName> order,
                 std::uint64_t j, int k);

enum class Backend { kBitParallel, kNaive };

struct EngineOptions {
  int log_chunk = kDefaultLogChunk;  // clamped to v
  unsigned workers = 1;              // 0 selects hardware concurrency
  int max_vars = kDefaultMaxVars;
  Backend backend = Backend::kBitParallel;
};

unsigned resolve_workers(unsigned requested);

struct EngineStats {
  std::size_t node_count = 0;
  int v = 0;
  int k = 0;
  std::uint64_t chunk_count = 0;
  BigInt estimated_ops = 0;  // node_count * 2^(v-k)
  double elapsed_seconds = 0.0;
};

EngineStats estimate_cycles(std::size_t node_count, int v, int k);

// Full-DNF coding of a term: bit at valuation index i is the term's value.
class DnfVector {
 public:
  DnfVector() = default;
  DnfVector(int var_count, BitVector bits);

  int var_count() const { return var_count_; }
  const BitVector& bits() const { return bits_; }
  const BigInt& model_count() const { return model_count_; }
  bool bit(std::uint64_t index) const { return bits_.get(index); }

  friend bool operator==(const DnfVector& a, const DnfVector& b) {
    return a.var_count_ == b.var_count_ && a.bits_ == b.bits_;
  }

 private:
  int var_count_ = 0;
  BitVector bits_;
  BigInt model_count_ = 0;
};

struct FullResult {
  DnfVector dnf;
  EngineStats stats;
};

struct CountResult {
  BigInt model_count = 0;
  EngineStats stats;
};

// Throws Error(kCapExceeded) when order.size() > options.max_vars, and also
// when it exceeds kMaterializeLimit.
FullResult eval_full(const BoolTerm& term, std::span<const LetterName> order,
                     const EngineOptions& options = {});

CountResult count_models(const BoolTerm& term, std::span<const LetterName> order,
                         const EngineOptions& options = {});

// Visits model indices in ascending order until `visit` returns false.
EngineStats for_each_model(const BoolTerm& term, std::span<const LetterName> order,
                           const EngineOptions& options,
                           const std::function<bool(std::uint64_t)>& visit);

std::vector<std::uint64_t> enumerate_models(const DnfVector& dnf,
                                            std::optional<std::uint64_t> limit = {});

// True iff every signed meet b1^a1 & ... & bn^an is nonzero.
bool is_independent(std::span<const BitVector> vectors);

// (2^n)! / n!
BigInt count_free_generating_sets(unsigned n);

}  // namespace tba::engine
