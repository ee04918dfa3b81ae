// Copyright 2026 The Poise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "poise/lexer.hpp"

#include <cctype>

namespace poise {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view src) : src_(src) {}

  bool done() const { return i_ >= src_.size(); }
  char peek(size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  SourcePos pos() const { return {line_, col_}; }

 private:
  std::string_view src_;
  size_t i_ = 0;
  uint32_t line_ = 1;
  uint32_t col_ = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

// A dotted quad starts at a digit and looks like d+.d+.d+.d+ with each part
// <= 255. Scans ahead without consuming.
bool looks_like_ip(const Cursor& c) {
  size_t k = 0;
  int parts = 0;
  while (parts < 4) {
    if (!digit(c.peek(k))) return false;
    int len = 0;
    while (digit(c.peek(k))) {
      ++k;
      if (++len > 3) return false;
    }
    ++parts;
    if (parts == 4) break;
    if (c.peek(k) != '.') return false;
    ++k;
  }
  return parts == 4;
}

}  // namespace

std::vector<Token> lex(std::string_view source) {
  std::vector<Token> out;
  Cursor c(source);

  auto push = [&](Tok k, SourcePos p) {
    Token t;
    t.kind = k;
    t.pos = p;
    out.push_back(std::move(t));
  };

  while (!c.done()) {
    SourcePos p = c.pos();
    char ch = c.peek();

    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      c.advance();
      continue;
    }
    if (ch == '#') {
      while (!c.done() && c.peek() != '\n') c.advance();
      continue;
    }

    if (ch == '-' && c.peek(1) == '-' && c.peek(2) == '-') {
      c.advance();
      c.advance();
      c.advance();
      push(Tok::kSeparator, p);
      continue;
    }

    if (ident_start(ch)) {
      std::string word;
      while (!c.done() && ident_cont(c.peek())) word += c.advance();
      // Identifiers may carry dots for versions like 1.0.2? No: versions are
      // numeric literals; identifiers stay plain.
      Token t;
      t.kind = Tok::kIdent;
      t.text = std::move(word);
      t.pos = p;
      out.push_back(std::move(t));
      continue;
    }

    if (digit(ch)) {
      if (looks_like_ip(c)) {
        uint64_t v = 0;
        for (int part = 0; part < 4; ++part) {
          uint64_t octet = 0;
          while (digit(c.peek())) octet = octet * 10 + (c.advance() - '0');
          if (octet > 255)
            throw ParseError(p, "IPv4 octet out of range");
          v = (v << 8) | octet;
          if (part < 3) c.advance();  // '.'
        }
        Token t;
        t.kind = Tok::kIp;
        t.value = v;
        t.pos = p;
        out.push_back(std::move(t));
        continue;
      }
      uint64_t v = 0;
      if (ch == '0' && (c.peek(1) == 'x' || c.peek(1) == 'X')) {
        c.advance();
        c.advance();
        bool any = false;
        while (std::isxdigit(static_cast<unsigned char>(c.peek()))) {
          char d = c.advance();
          uint64_t nib = digit(d) ? d - '0' : (std::tolower(d) - 'a' + 10);
          v = (v << 4) | nib;
          any = true;
        }
        if (!any) throw ParseError(p, "malformed hex literal");
      } else {
        // Decimal, leading zeros allowed: 0800 reads as 800 (times of day).
        while (digit(c.peek())) v = v * 10 + (c.advance() - '0');
      }
      Token t;
      t.kind = Tok::kInt;
      t.value = v;
      t.pos = p;
      out.push_back(std::move(t));
      continue;
    }

    if (ch == '"') {
      c.advance();
      std::string body;
      while (!c.done() && c.peek() != '"') {
        if (c.peek() == '\n') throw ParseError(p, "unterminated string");
        body += c.advance();
      }
      if (c.done()) throw ParseError(p, "unterminated string");
      c.advance();
      Token t;
      t.kind = Tok::kString;
      t.text = std::move(body);
      t.pos = p;
      out.push_back(std::move(t));
      continue;
    }

    c.advance();
    switch (ch) {
      case '(': push(Tok::kLParen, p); break;
      case ')': push(Tok::kRParen, p); break;
      case '[': push(Tok::kLBracket, p); break;
      case ']': push(Tok::kRBracket, p); break;
      case '{': push(Tok::kLBrace, p); break;
      case '}': push(Tok::kRBrace, p); break;
      case ',': push(Tok::kComma, p); break;
      case ':': push(Tok::kColon, p); break;
      case '+': push(Tok::kPlus, p); break;
      case '-': push(Tok::kMinus, p); break;
      case '*': push(Tok::kStar, p); break;
      case '/': push(Tok::kSlash, p); break;
      case '%': push(Tok::kPercent, p); break;
      case '&': push(Tok::kAmp, p); break;
      case '|': push(Tok::kPipe, p); break;
      case '=':
        if (c.peek() == '=') {
          c.advance();
          push(Tok::kEq, p);
        } else {
          push(Tok::kAssign, p);
        }
        break;
      case '!':
        if (c.peek() == '=') {
          c.advance();
          push(Tok::kNe, p);
        } else {
          push(Tok::kBang, p);
        }
        break;
      case '<':
        if (c.peek() == '=') {
          c.advance();
          push(Tok::kLe, p);
        } else if (c.peek() == '<') {
          throw ParseError(p, "unknown token '<<'");
        } else {
          push(Tok::kLt, p);
        }
        break;
      case '>':
        if (c.peek() == '=') {
          c.advance();
          push(Tok::kGe, p);
        } else if (c.peek() == '>') {
          throw ParseError(p, "unknown token '>>'");
        } else {
          push(Tok::kGt, p);
        }
        break;
      default:
        throw ParseError(p, std::string("unknown token '") + ch + "'");
    }
  }

  Token eof;
  eof.kind = Tok::kEof;
  eof.pos = c.pos();
  out.push_back(std::move(eof));
  return out;
}

}  // namespace poise
