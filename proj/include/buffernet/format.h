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

#ifndef BUFFERNET_FORMAT_H_
#define BUFFERNET_FORMAT_H_

#include <string>

#include "buffernet/extended_real.h"

namespace buffernet {

// Twelve significant digits; infinities print as "inf" / "-inf".
std::string FormatNumber(double value);
std::string FormatNumber(const ExtendedReal& value);

// The double that FormatNumber(value) denotes.
double RoundSignificant(double value);

}  // namespace buffernet

#endif  // BUFFERNET_FORMAT_H_
