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

#include "lexer.hpp"

#include <cctype>

#include "tba/error.hpp"

namespace tba::shell::detail {

void fail_at(const Token& token, const std::string& message) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(token.line) + ", column " +
                                     std::to_string(token.column) + ": " + message);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, column = 1, depth = 0;
  std::size_t i = 0;
  auto push = [&](TokenKind kind, std::string t, int col) {
    Token tok;
    tok.kind = kind;
    tok.text = std::move(t);
    tok.line = line;
    tok.column = col;
    out.push_back(std::move(tok));
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      if (depth == 0 && !out.empty() && out.back().kind != TokenKind::kNewline)
        push(TokenKind::kNewline, "\\n", column);
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++column;
      continue;
    }
    const int start_col = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(TokenKind::kIdent, std::string(text.substr(i, j - i)), start_col);
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(TokenKind::kInt, std::string(text.substr(i, j - i)), start_col);
      if (j - i > 15) fail_at(out.back(), "integer literal too large");
      out.back().value = std::stoll(out.back().text);
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    std::string op;
    for (std::string_view cand : {"<->", "->", "!=", "<=", "..", "//"})
      if (text.substr(i, cand.size()) == cand) {
        op = cand;
        break;
      }
    if (op.empty()) {
      static constexpr std::string_view kSingles = "=()[]{},:.~&^|+-*%!/";
      if (kSingles.find(c) == std::string_view::npos) {
        Token bad;
        bad.line = line;
        bad.column = column;
        fail_at(bad, std::string("unexpected character '") + c + "'");
      }
      op = std::string(1, c);
    }
    if (op == "(" || op == "[" || op == "{") ++depth;
    if ((op == ")" || op == "]" || op == "}") && depth > 0) --depth;
    push(TokenKind::kPunct, op, start_col);
    column += static_cast<int>(op.size());
    i += op.size();
  }
  if (!out.empty() && out.back().kind != TokenKind::kNewline) push(TokenKind::kNewline, "\\n", column);
  push(TokenKind::kEnd, "end of input", column);
  return out;
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  const std::size_t at = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[at];
}

const Token& TokenCursor::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenCursor::at_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::kPunct && t.text == p;
}

bool TokenCursor::at_ident(std::string_view name, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::kIdent && t.text == name;
}

bool TokenCursor::at_end_of_statement() const {
  const auto k = peek().kind;
  return k == TokenKind::kNewline || k == TokenKind::kEnd;
}

bool TokenCursor::accept_punct(std::string_view p) {
  if (!at_punct(p)) return false;
  next();
  return true;
}

const Token& TokenCursor::expect_punct(std::string_view p) {
  if (!at_punct(p)) fail_at(peek(), "expected '" + std::string(p) + "', found '" + peek().text + "'");
  return next();
}

const Token& TokenCursor::expect_ident(const char* what) {
  if (peek().kind != TokenKind::kIdent)
    fail_at(peek(), std::string("expected ") + what + ", found '" + peek().text + "'");
  return next();
}

std::int64_t TokenCursor::expect_int(const char* what) {
  if (peek().kind != TokenKind::kInt)
    fail_at(peek(), std::string("expected ") + what + ", found '" + peek().text + "'");
  return next().value;
}

void TokenCursor::expect_end_of_statement() {
  if (!at_end_of_statement()) fail_at(peek(), "unexpected '" + peek().text + "'");
  if (peek().kind == TokenKind::kNewline) next();
}

void TokenCursor::skip_newlines() {
  while (peek().kind == TokenKind::kNewline) next();
}

}  // namespace tba::shell::detail
