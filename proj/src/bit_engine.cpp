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

#include "tba/bit_engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <thread>

#include "parallel.hpp"
#include "tba/error.hpp"

namespace tba::engine {

namespace {

// Bit r of kPattern[s] is (r >> s) & 1: the rows of the free-vector matrix
// that vary inside a single 64-bit word.
constexpr std::uint64_t kPattern[kLogWordBits] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

constexpr std::size_t kBlockWords = 64;

std::uint64_t low_mask(int v) {
  return v >= kLogWordBits ? ~0ull : (2ull << ((1u << v) - 1)) - 1;
}

void check_cap(std::size_t v, const EngineOptions& options) {
  if (options.max_vars < 0 || options.max_vars > kMaxVarsLimit)
    throw Error(ErrorCode::kUsage, "max-vars must be between 0 and " +
                                       std::to_string(kMaxVarsLimit));
  if (v > static_cast<std::size_t>(options.max_vars))
    throw Error(ErrorCode::kCapExceeded,
                "free variable count " + std::to_string(v) +
                    " exceeds the feasibility cap " + std::to_string(options.max_vars));
}

int effective_log_chunk(int v, int requested) {
  if (requested < 0) throw Error(ErrorCode::kUsage, "chunk bits must be non-negative");
  return std::min(v, requested);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BitVector::BitVector(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw Error(ErrorCode::kParse, "bit string may only contain 0 and 1");
    out.set(i, bits[i] == '1');
  }
  return out;
}

void BitVector::set(std::uint64_t i, bool bit) {
  const std::uint64_t m = 1ull << (i & 63);
  if (bit)
    words_[i >> 6] |= m;
  else
    words_[i >> 6] &= ~m;
}

std::uint64_t BitVector::popcount() const {
  std::uint64_t total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::uint64_t i = 0; i < size_; ++i)
    if (get(i)) out[i] = '1';
  return out;
}

bool free_vector_bit(const FreeVectorScheme& scheme, int i, std::uint64_t j) {
  if (scheme.v < 1 || scheme.v > 63 || i < 1 || i > scheme.v)
    throw Error(ErrorCode::kRange, "free vector position " + std::to_string(i) +
                                       " out of range 1.." + std::to_string(scheme.v));
  if (j >> scheme.v)
    throw Error(ErrorCode::kRange, "valuation index " + std::to_string(j) +
                                       " out of range for v=" + std::to_string(scheme.v));
  return (j >> (scheme.v - i)) & 1u;
}

BitVector free_vector(const FreeVectorScheme& scheme, int i) {
  if (scheme.v > kMaterializeLimit)
    throw Error(ErrorCode::kCapExceeded, "free vector too large to materialize");
  BitVector out(1ull << scheme.v);
  for (std::uint64_t j = 0; j < out.size(); ++j) out.set(j, free_vector_bit(scheme, i, j));
  return out;
}

CompiledTerm::CompiledTerm(const BoolTerm& term, std::span<const LetterName> order)
    : order_(order.begin(), order.end()),
      var_count_(static_cast<int>(order.size())),
      node_count_(tba::node_count(term)) {
  if (order.size() > 63) throw Error(ErrorCode::kCapExceeded, "too many variables");
  lookup_.reserve(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i)
    lookup_.emplace_back(order_[i], static_cast<std::uint32_t>(i + 1));
  std::sort(lookup_.begin(), lookup_.end());
  for (std::size_t i = 1; i < lookup_.size(); ++i)
    if (lookup_[i - 1].first == lookup_[i].first)
      throw Error(ErrorCode::kUsage, "letter order contains duplicates");
  emit(term, 0);
}

void CompiledTerm::emit(const BoolTerm& t, std::size_t depth) {
  auto push = [&](Code c, std::uint32_t arg = 0) {
    program_.push_back({c, arg});
    max_depth_ = std::max(max_depth_, depth + 1);
  };
  switch (t.op()) {
    case BoolOp::kConst:
      push(t.value() ? Code::kOne : Code::kZero);
      return;
    case BoolOp::kVar: {
      std::uint32_t pos = 0;
      auto it = std::lower_bound(
          lookup_.begin(), lookup_.end(), t.letter(),
          [](const auto& entry, const LetterName& key) { return entry.first < key; });
      if (it != lookup_.end() && it->first == t.letter()) pos = it->second;
      if (pos == 0)
        throw Error(ErrorCode::kUnbound,
                    "letter " + t.letter().str() + " is not in the variable order");
      push(Code::kVar, pos);
      return;
    }
    case BoolOp::kNot:
      emit(t.children()[0], depth);
      program_.push_back({Code::kNot, 0});
      return;
    default:
      break;
  }
  Code code = Code::kAnd;
  switch (t.op()) {
    case BoolOp::kAnd: code = Code::kAnd; break;
    case BoolOp::kOr: code = Code::kOr; break;
    case BoolOp::kXor: code = Code::kXor; break;
    case BoolOp::kImplies: code = Code::kImplies; break;
    case BoolOp::kIff: code = Code::kIff; break;
    default: break;
  }
  auto kids = t.children();
  emit(kids[0], depth);
  for (std::size_t i = 1; i < kids.size(); ++i) {
    emit(kids[i], depth + 1);
    program_.push_back({code, 0});
  }
}

void CompiledTerm::eval_words(std::uint64_t first_word, std::span<std::uint64_t> out) const {
  thread_local std::vector<std::uint64_t> scratch;
  scratch.resize(std::max<std::size_t>(1, max_depth_) * kBlockWords);
  const int v = var_count_;
  for (std::size_t base = 0; base < out.size(); base += kBlockWords) {
    const std::size_t n = std::min(kBlockWords, out.size() - base);
    const std::uint64_t w0 = first_word + base;
    std::size_t sp = 0;
    for (const Instr& ins : program_) {
      std::uint64_t* top = scratch.data() + sp * kBlockWords;
      std::uint64_t* below = sp > 0 ? top - kBlockWords : top;
      std::uint64_t* second = sp > 1 ? below - kBlockWords : below;
      switch (ins.code) {
        case Code::kVar: {
          const int shift = v - static_cast<int>(ins.arg);
          if (shift >= kLogWordBits) {
            for (std::size_t i = 0; i < n; ++i)
              top[i] = ((w0 + i) >> (shift - kLogWordBits)) & 1u ? ~0ull : 0ull;
          } else {
            std::fill_n(top, n, kPattern[shift]);
          }
          ++sp;
          break;
        }
        case Code::kZero:
          std::fill_n(top, n, 0ull);
          ++sp;
          break;
        case Code::kOne:
          std::fill_n(top, n, ~0ull);
          ++sp;
          break;
        case Code::kNot:
          for (std::size_t i = 0; i < n; ++i) below[i] = ~below[i];
          break;
        case Code::kAnd:
          for (std::size_t i = 0; i < n; ++i) second[i] &= below[i];
          --sp;
          break;
        case Code::kOr:
          for (std::size_t i = 0; i < n; ++i) second[i] |= below[i];
          --sp;
          break;
        case Code::kXor:
          for (std::size_t i = 0; i < n; ++i) second[i] ^= below[i];
          --sp;
          break;
        case Code::kImplies:
          for (std::size_t i = 0; i < n; ++i)
            second[i] = ~second[i] | below[i];
          --sp;
          break;
        case Code::kIff:
          for (std::size_t i = 0; i < n; ++i)
            second[i] = ~(second[i] ^ below[i]);
          --sp;
          break;
      }
    }
    std::copy_n(scratch.data(), n, out.data() + base);
  }
  if (v < kLogWordBits && first_word == 0 && !out.empty()) {
    out[0] &= low_mask(v);
    std::fill(out.begin() + 1, out.end(), 0ull);
  }
}

std::string Chunk::to_string() const {
  const std::uint64_t size = 1ull << log_size;
  std::string s(size, '0');
  for (std::uint64_t r = 0; r < size; ++r)
    if (bit(r)) s[r] = '1';
  return s;
}

Chunk eval_chunk(const CompiledTerm& term, std::uint64_t j, int k) {
  const int v = term.var_count();
  if (k < 0 || k > v)
    throw Error(ErrorCode::kRange, "chunk bits " + std::to_string(k) +
                                       " exceed variable count " + std::to_string(v));
  if (j >> (v - k))
    throw Error(ErrorCode::kRange, "chunk index " + std::to_string(j) + " out of range");
  Chunk chunk;
  chunk.index = j;
  chunk.log_size = k;
  if (k >= kLogWordBits) {
    chunk.words.resize(1ull << (k - kLogWordBits));
    term.eval_words(j << (k - kLogWordBits), chunk.words);
  } else {
    const std::uint64_t first_bit = j << k;
    std::uint64_t word = 0;
    term.eval_words(first_bit >> kLogWordBits, {&word, 1});
    chunk.words.push_back((word >> (first_bit & 63)) & low_mask(k));
  }
  return chunk;
}

Chunk eval_chunk(const BoolTerm& term, std::span<const LetterName> order, std::uint64_t j,
                 int k) {
  return eval_chunk(CompiledTerm(term, order), j, k);
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

EngineStats estimate_cycles(std::size_t node_count, int v, int k) {
  EngineStats stats;
  stats.node_count = node_count;
  stats.v = v;
  stats.k = k;
  stats.chunk_count = 1ull << (v - k);
  stats.estimated_ops = BigInt(node_count) * stats.chunk_count;
  return stats;
}

DnfVector::DnfVector(int var_count, BitVector bits)
    : var_count_(var_count), bits_(std::move(bits)), model_count_(bits_.popcount()) {}

namespace {

struct Plan {
  int v;
  int k;
  std::uint64_t total_words;
  std::uint64_t words_per_task;
  std::uint64_t tasks;
};

Plan make_plan(int v, int k) {
  Plan p{v, k, 0, 0, 0};
  p.total_words = v >= kLogWordBits ? 1ull << (v - kLogWordBits) : 1;
  p.words_per_task = k >= kLogWordBits ? 1ull << (k - kLogWordBits) : 1;
  p.tasks = p.total_words / p.words_per_task;
  return p;
}

}  // namespace

FullResult eval_full(const BoolTerm& term, std::span<const LetterName> order,
                     const EngineOptions& options) {
  const auto start = Clock::now();
  check_cap(order.size(), options);
  const int v = static_cast<int>(order.size());
  if (v > kMaterializeLimit)
    throw Error(ErrorCode::kCapExceeded,
                "cannot materialize 2^" + std::to_string(v) + " bits (limit 2^" +
                    std::to_string(kMaterializeLimit) + "); count or stream instead");
  const int k = effective_log_chunk(v, options.log_chunk);
  BitVector bits(1ull << v);
  std::size_t nodes = tba::node_count(term);
  if (options.backend == Backend::kNaive) {
    for (std::uint64_t idx = 0; idx < bits.size(); ++idx)
      bits.set(idx, eval_naive(term, valuation_at(order, idx)));
  } else {
    const CompiledTerm compiled(term, order);
    const Plan plan = make_plan(v, k);
    auto words = bits.words();
    detail::parallel_for(plan.tasks, resolve_workers(options.workers),
                         [&](std::uint64_t task, unsigned) {
                           const std::uint64_t first = task * plan.words_per_task;
                           compiled.eval_words(first, words.subspan(first, plan.words_per_task));
                         });
  }
  FullResult result{DnfVector(v, std::move(bits)), estimate_cycles(nodes, v, k)};
  result.stats.elapsed_seconds = seconds_since(start);
  return result;
}

CountResult count_models(const BoolTerm& term, std::span<const LetterName> order,
                         const EngineOptions& options) {
  const auto start = Clock::now();
  check_cap(order.size(), options);
  const int v = static_cast<int>(order.size());
  const int k = effective_log_chunk(v, options.log_chunk);
  CountResult result;
  result.stats = estimate_cycles(tba::node_count(term), v, k);
  if (options.backend == Backend::kNaive) {
    std::uint64_t total = 0;
    for (std::uint64_t idx = 0; idx < (1ull << v); ++idx)
      total += eval_naive(term, valuation_at(order, idx)) ? 1 : 0;
    result.model_count = total;
  } else {
    const CompiledTerm compiled(term, order);
    const Plan plan = make_plan(v, k);
    const unsigned workers = resolve_workers(options.workers);
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::vector<std::uint64_t>> buffers(workers);
    detail::parallel_for(plan.tasks, workers, [&](std::uint64_t task, unsigned w) {
      auto& buf = buffers[w];
      buf.resize(plan.words_per_task);
      compiled.eval_words(task * plan.words_per_task, buf);
      std::uint64_t c = 0;
      for (auto word : buf) c += std::popcount(word);
      partial[w] += c;
    });
    for (auto c : partial) result.model_count += c;
  }
  result.stats.elapsed_seconds = seconds_since(start);
  return result;
}

EngineStats for_each_model(const BoolTerm& term, std::span<const LetterName> order,
                           const EngineOptions& options,
                           const std::function<bool(std::uint64_t)>& visit) {
  const auto start = Clock::now();
  check_cap(order.size(), options);
  const int v = static_cast<int>(order.size());
  const int k = effective_log_chunk(v, options.log_chunk);
  EngineStats stats = estimate_cycles(tba::node_count(term), v, k);
  if (options.backend == Backend::kNaive) {
    for (std::uint64_t idx = 0; idx < (1ull << v); ++idx)
      if (eval_naive(term, valuation_at(order, idx)) && !visit(idx)) break;
    stats.elapsed_seconds = seconds_since(start);
    return stats;
  }
  const CompiledTerm compiled(term, order);
  const Plan plan = make_plan(v, k);
  const unsigned workers = resolve_workers(options.workers);
  // Batches are evaluated in parallel and scanned in ascending order.
  const std::uint64_t batch_tasks =
      std::max<std::uint64_t>(workers * 4ull, (1ull << 14) / plan.words_per_task);
  std::vector<std::uint64_t> buffer;
  for (std::uint64_t first_task = 0; first_task < plan.tasks; first_task += batch_tasks) {
    const std::uint64_t count = std::min(batch_tasks, plan.tasks - first_task);
    buffer.assign(count * plan.words_per_task, 0);
    detail::parallel_for(count, workers, [&](std::uint64_t t, unsigned) {
      compiled.eval_words((first_task + t) * plan.words_per_task,
                          std::span(buffer).subspan(t * plan.words_per_task,
                                                    plan.words_per_task));
    });
    const std::uint64_t first_word = first_task * plan.words_per_task;
    for (std::uint64_t w = 0; w < buffer.size(); ++w) {
      std::uint64_t word = buffer[w];
      while (word) {
        const int r = std::countr_zero(word);
        word &= word - 1;
        if (!visit(((first_word + w) << kLogWordBits) + r)) {
          stats.elapsed_seconds = seconds_since(start);
          return stats;
        }
      }
    }
  }
  stats.elapsed_seconds = seconds_since(start);
  return stats;
}

std::vector<std::uint64_t> enumerate_models(const DnfVector& dnf,
                                            std::optional<std::uint64_t> limit) {
  std::vector<std::uint64_t> out;
  const auto words = dnf.bits().words();
  for (std::uint64_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    while (word) {
      if (limit && out.size() >= *limit) return out;
      const int r = std::countr_zero(word);
      word &= word - 1;
      out.push_back((w << kLogWordBits) + r);
    }
  }
  return out;
}

bool is_independent(std::span<const BitVector> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::kUsage, "independence test needs vectors");
  const std::uint64_t size = vectors.front().size();
  for (const auto& b : vectors)
    if (b.size() != size) throw Error(ErrorCode::kUsage, "vector length mismatch");
  if (vectors.size() > 30) throw Error(ErrorCode::kGuard, "too many vectors");
  const std::size_t n = vectors.size();
  const std::size_t word_count = vectors.front().words().size();
  const std::uint64_t tail_mask = size % 64 ? (1ull << (size % 64)) - 1 : ~0ull;
  for (std::uint64_t alpha = 0; alpha < (1ull << n); ++alpha) {
    bool nonzero = false;
    for (std::size_t w = 0; w < word_count && !nonzero; ++w) {
      std::uint64_t meet = w + 1 == word_count ? tail_mask : ~0ull;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t word = vectors[i].words()[w];
        meet &= (alpha >> (n - 1 - i)) & 1u ? word : ~word;
      }
      nonzero = meet != 0;
    }
    if (!nonzero) return false;
  }
  return true;
}

BigInt count_free_generating_sets(unsigned n) {
  if (n < 1) throw Error(ErrorCode::kRange, "n must be at least 1");
  if (n > 20) throw Error(ErrorCode::kGuard, "n too large for (2^n)!/n!");
  const unsigned m = 1u << n;
  BigInt result = 1;
  for (unsigned i = n + 1; i <= m; ++i) result *= i;
  return result;
}

}  // namespace tba::engine
