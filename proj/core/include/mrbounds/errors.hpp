// Copyright 2026 The mrbounds Authors
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

namespace mrbounds {

/// A value lies outside the domain an operation is defined on (a state
/// outside the grid, an offset outside a neighbor set, a nonpositive ratio).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The inputs do not describe a usable configuration (grid too small for the
/// LP path, model parameters violating their invariants, bad file contents).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Rates that do not fit under uniformization parameter 1.
class NormalizationError : public ConfigError {
 public:
  explicit NormalizationError(const std::string& what) : ConfigError(what) {}
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mrbounds
