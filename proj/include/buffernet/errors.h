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

#ifndef BUFFERNET_ERRORS_H_
#define BUFFERNET_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace buffernet {

// Base of every error thrown by the library. The CLI maps `kind()` to an exit
// code: input problems exit 1, domain failures exit 2.
class Error : public std::runtime_error {
 public:
  enum class Kind { kInput, kDomain };

  Error(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Kind::kInput, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(Kind::kInput, what) {}
};

class SchemaVersionError : public Error {
 public:
  explicit SchemaVersionError(const std::string& what)
      : Error(Kind::kInput, what) {}
};

// Broken instance structure. Carries every violated invariant, not just the
// first one found.
class StructuralError : public Error {
 public:
  explicit StructuralError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(Kind::kDomain, what) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(Kind::kDomain, what) {}
};

class IterationLimit : public Error {
 public:
  explicit IterationLimit(const std::string& what)
      : Error(Kind::kDomain, what) {}
};

class DimensionTooLarge : public Error {
 public:
  explicit DimensionTooLarge(const std::string& what)
      : Error(Kind::kDomain, what) {}
};

class DegenerateDraw : public Error {
 public:
  explicit DegenerateDraw(const std::string& what)
      : Error(Kind::kDomain, what) {}
};

class ZeroMass : public Error {
 public:
  explicit ZeroMass(const std::string& what) : Error(Kind::kDomain, what) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& what)
      : Error(Kind::kDomain, what) {}
};

}  // namespace buffernet

#endif  // BUFFERNET_ERRORS_H_
