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

#ifndef POISE_DIAG_HPP_
#define POISE_DIAG_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace poise {

// Position in policy source text, 1-based. line == 0 means "no position".
struct SourcePos {
  uint32_t line = 0;
  uint32_t col = 0;
};

inline std::string to_string(SourcePos p) {
  return std::to_string(p.line) + ":" + std::to_string(p.col);
}

class PoiseError : public std::runtime_error {
 public:
  explicit PoiseError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public PoiseError {
 public:
  ParseError(SourcePos pos, const std::string& msg)
      : PoiseError("parse error at " + to_string(pos) + ": " + msg), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class ValidateError : public PoiseError {
 public:
  ValidateError(SourcePos pos, const std::string& msg)
      : PoiseError("validation error at " + to_string(pos) + ": " + msg), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class CompileError : public PoiseError {
 public:
  explicit CompileError(const std::string& msg) : PoiseError("compile error: " + msg) {}
};

// Two composed branches with overlapping predicates but different actions.
class ConflictError : public PoiseError {
 public:
  ConflictError(const std::string& branch_a, const std::string& branch_b)
      : PoiseError("conflicting policies: branch [" + branch_a + "] overlaps branch [" +
                   branch_b + "] with a different action"),
        branch_a_(branch_a),
        branch_b_(branch_b) {}
  const std::string& branch_a() const { return branch_a_; }
  const std::string& branch_b() const { return branch_b_; }

 private:
  std::string branch_a_;
  std::string branch_b_;
};

enum class Resource { kStages, kTables, kSram, kTcam, kRecirculations };

inline const char* resource_name(Resource r) {
  switch (r) {
    case Resource::kStages: return "stages";
    case Resource::kTables: return "tables";
    case Resource::kSram: return "SRAM";
    case Resource::kTcam: return "TCAM";
    case Resource::kRecirculations: return "recirculations";
  }
  return "?";
}

class ResourceError : public PoiseError {
 public:
  ResourceError(Resource which, const std::string& detail)
      : PoiseError(std::string("resource exhausted (") + resource_name(which) + "): " + detail),
        which_(which) {}
  Resource which() const { return which_; }

 private:
  Resource which_;
};

}  // namespace poise

#endif  // POISE_DIAG_HPP_
