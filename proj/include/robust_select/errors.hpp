// Copyright 2026 The Authors.
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

#ifndef ROBUST_SELECT_ERRORS_HPP_
#define ROBUST_SELECT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace robust_select {

// Bad index or malformed problem instance.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Matroid description that violates its own structural rules
// (overlapping or non-covering partition blocks, ids out of range).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid solver or benchmark parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive routine asked to work beyond its enumeration cap.
class RefusalError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// File could not be read or written; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace robust_select

#endif  // ROBUST_SELECT_ERRORS_HPP_
