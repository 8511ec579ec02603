// Copyright 2026 The unilearn Authors
//
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

namespace unilearn {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes or qubit counts.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A value violates a type invariant (non-unitary matrix, bad trace, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Non-finite values, divergence, or an infeasible numerical target.
class NumericalError : public Error {
  public:
    using Error::Error;
};

} // namespace unilearn
