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

#include "buffernet/format.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace buffernet {

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";  // folds -0
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string FormatNumber(const ExtendedReal& value) {
  return value.infinite ? "inf" : FormatNumber(value.value);
}

double RoundSignificant(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(FormatNumber(value).c_str(), nullptr);
}

}  // namespace buffernet
