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
#include <string>
#include <string_view>
#include <vector>

namespace tba::shell::detail {

enum class TokenKind { kIdent, kInt, kPunct, kNewline, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  std::int64_t value = 0;
  int line = 0;
  int column = 0;
};

// Splits text into tokens. Newlines inside (), [] or {} are dropped so a
// statement may span several lines; '#' starts a comment.
std::vector<Token> tokenize(std::string_view text);

[[noreturn]] void fail_at(const Token& token, const std::string& message);

// Cursor over one token stream with the usual peek/accept/expect helpers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_punct(std::string_view p, std::size_t ahead = 0) const;
  bool at_ident(std::string_view name, std::size_t ahead = 0) const;
  bool at_end_of_statement() const;
  bool accept_punct(std::string_view p);
  const Token& expect_punct(std::string_view p);
  const Token& expect_ident(const char* what);
  std::int64_t expect_int(const char* what);
  void expect_end_of_statement();
  void skip_newlines();
  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace tba::shell::detail
