// Copyright 2026 The amsplace Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace amsplace {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: unresolved ids, missing rectangles, bad sizes.
class InputError : public Error {
 public:
  using Error::Error;
};

// A file did not match its schema. The message names the field path.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// A file parsed but refers to ids that do not exist.
class ReferenceError : public InputError {
 public:
  using InputError::InputError;
};

// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// The instance cannot be expressed as a placement model.
class ModelError : public Error {
 public:
  using Error::Error;
};

// The MILP backend failed or returned something unusable.
class SolverError : public Error {
 public:
  using Error::Error;
};

// A solver result did not decode to a placement (integrality breach).
class ExtractionError : public Error {
 public:
  using Error::Error;
};

// No feasible placement could be produced from a rough layout.
class LegalizationError : public Error {
 public:
  using Error::Error;
};

// Instance generator configuration is contradictory.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace amsplace
