// Copyright 2026 The spshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPSHARE_ERRORS_HPP
#define SPSHARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spshare {

// invalid arguments, malformed files, mismatched fields/dimensions
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// parameter combinations outside the achievable region (CLI exit code 3)
struct FeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// not enough responses to decode (CLI exit code 4)
struct RecoveryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spshare

#endif  // SPSHARE_ERRORS_HPP
