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

#ifndef POISE_VALIDATE_HPP_
#define POISE_VALIDATE_HPP_

#include "poise/ast.hpp"

namespace poise {

// Resolves every identifier (fields, lists, monitors, scalar defs), interns
// strings in first-appearance order, range-checks constants against field
// widths, and assigns context fields their header-stack order (first use).
// Context fields referenced without a `context` declaration are implicitly
// declared with the default 32-bit unsigned shape.
ValidatedPolicy validate(PolicyAst ast);

}  // namespace poise

#endif  // POISE_VALIDATE_HPP_
