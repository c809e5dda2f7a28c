// Copyright 2026 The qnet Authors
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

namespace qnet {

// Argument kinds do not match (e.g. tensoring a ket with an operator).
struct KindMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input fails a structural or physical validity check.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Scalar parameter outside its admissible range.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A construction produced an object that violates its own invariants.
struct IntegrityError : std::logic_error {
    using std::logic_error::logic_error;
};

// An operation was called on an input of the wrong shape or label.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Sources and measurements cannot be wired together as requested.
struct WiringError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inconsistent scenario or model configuration.
struct ConfigurationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace qnet
