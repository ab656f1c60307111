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

#ifndef BUFFERNET_EXTENDED_REAL_H_
#define BUFFERNET_EXTENDED_REAL_H_

#include <limits>

namespace buffernet {

// A real number or +infinity, with the infinity carried as an explicit flag.
// Margins with zero exposure and losses of infeasible clearings are infinite.
struct ExtendedReal {
  double value = 0.0;  // meaningful only when !infinite
  bool infinite = false;

  static ExtendedReal Finite(double v) { return {v, false}; }
  static ExtendedReal Infinity() { return {0.0, true}; }

  bool is_finite() const { return !infinite; }
  double AsDouble() const {
    return infinite ? std::numeric_limits<double>::infinity() : value;
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

inline ExtendedReal Max(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinite || b.infinite) return ExtendedReal::Infinity();
  return ExtendedReal::Finite(a.value < b.value ? b.value : a.value);
}

}  // namespace buffernet

#endif  // BUFFERNET_EXTENDED_REAL_H_
