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

#ifndef POISE_PARSER_HPP_
#define POISE_PARSER_HPP_

#include <string_view>
#include <vector>

#include "poise/ast.hpp"

namespace poise {

// Parses one policy program. Throws ParseError if the source holds more
// than one (use parse_file for `---`-separated programs).
PolicyAst parse(std::string_view source);

// Parses a .poise file: one or more policies separated by `---`.
std::vector<PolicyAst> parse_file(std::string_view source);

}  // namespace poise

#endif  // POISE_PARSER_HPP_
