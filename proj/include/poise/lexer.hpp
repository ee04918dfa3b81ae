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

#ifndef POISE_LEXER_HPP_
#define POISE_LEXER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "poise/diag.hpp"

namespace poise {

enum class Tok : uint8_t {
  kEof,
  kIdent,
  kInt,      // decimal (leading zeros allowed, read as decimal) or 0x hex
  kIp,       // dotted-quad IPv4
  kString,   // "..."
  kSeparator,  // --- between policies
  kLParen, kRParen, kLBracket, kRBracket, kLBrace, kRBrace,
  kComma, kColon,
  kAssign,   // =
  kEq, kNe, kLt, kLe, kGt, kGe,
  kPlus, kMinus, kStar, kSlash, kPercent,
  kAmp, kPipe, kBang,
};

struct Token {
  Tok kind = Tok::kEof;
  std::string text;      // identifier or string body
  uint64_t value = 0;    // kInt / kIp
  SourcePos pos;
};

// Tokenizes a whole policy source. Throws ParseError on unknown tokens.
std::vector<Token> lex(std::string_view source);

}  // namespace poise

#endif  // POISE_LEXER_HPP_
