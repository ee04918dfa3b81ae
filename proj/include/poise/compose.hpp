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

#ifndef POISE_COMPOSE_HPP_
#define POISE_COMPOSE_HPP_

#include <vector>

#include "poise/ast.hpp"

namespace poise {

// Merges several policies into one: declarations merged by name (identical
// ones deduplicate, mismatches are errors), bodies joined by parallel
// composition in input order. First matching terminal action wins at
// evaluation. Inputs are expected to be validated already; the result should
// be re-validated.
PolicyAst compose(const std::vector<PolicyAst>& policies);

}  // namespace poise

#endif  // POISE_COMPOSE_HPP_
