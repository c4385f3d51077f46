// Copyright 2026 The cdsc Authors
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

#include <stdexcept>
#include <string>

namespace cdsc {

/// Malformed or unknown configuration input. Maps to CLI exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation refused because the instance exceeds its enumeration budget
/// or falls outside the supported domain.
struct UnsupportedError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Numerical breakdown: failed fits, non-finite intermediate values. Maps to
/// CLI exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cdsc
