// Copyright 2026 The stabenc Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Error types shared across the library. InputError covers malformed data,
 * bad indices and broken preconditions; NumericError covers failures
 * detected during computation (lost normalization, non-unitary payloads,
 * non-finite objective values).
 */

#pragma once

#include <stdexcept>
#include <string>

namespace stabenc {

class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace stabenc
