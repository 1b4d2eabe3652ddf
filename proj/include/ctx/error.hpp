// Copyright 2026 The ctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace ctx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Tensor or matrix dimensions disagree with the scenario they are used with.
class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what) : Error("shape mismatch: " + what) {}
};

/// An argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// An enumeration would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, double required, double cap)
      : Error(what + ": requires " + fmt_count(required) + " > cap " + fmt_count(cap)),
        required_(required) {}
  double required() const noexcept { return required_; }

 private:
  static std::string fmt_count(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
  }
  double required_;
};

/// The scenario lies outside the class an algorithm supports.
class UnsupportedScenario : public Error {
 public:
  explicit UnsupportedScenario(const std::string& what) : Error("unsupported scenario: " + what) {}
};

/// Malformed JSON document or schema violation.
class DocumentError : public Error {
 public:
  explicit DocumentError(const std::string& what) : Error("document error: " + what) {}
};

/// The LP solver could not certify any status.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what) : Error("numerical failure: " + what) {}
};

}  // namespace ctx
