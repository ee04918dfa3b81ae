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

#ifndef POISE_PRETTY_PRINT_HPP_
#define POISE_PRETTY_PRINT_HPP_

#include <string>

#include "poise/ast.hpp"

namespace poise {

// Renders a policy back to surface syntax. parse(pretty_print(ast)) yields a
// structurally equal AST.
std::string pretty_print(const PolicyAst& ast);

std::string to_string(const ExprPtr& e);
std::string to_string(const Pred& p, const PolicyAst* ast = nullptr);
std::string to_string(const PredPtr& p, const PolicyAst* ast = nullptr);
std::string to_string(const Const& c);

}  // namespace poise

#endif  // POISE_PRETTY_PRINT_HPP_
