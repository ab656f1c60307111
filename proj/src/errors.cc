// Copyright 2026 The BufferNet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "buffernet/errors.h"

#include <string>
#include <utility>
#include <vector>

namespace buffernet {
namespace {

std::string JoinViolations(const std::vector<std::string>& violations) {
  std::string text = "structurally invalid instance:";
  for (const std::string& v : violations) text += "\n  - " + v;
  return text;
}

}  // namespace

StructuralError::StructuralError(std::vector<std::string> violations)
    : Error(Kind::kDomain, JoinViolations(violations)),
      violations_(std::move(violations)) {}

}  // namespace buffernet
