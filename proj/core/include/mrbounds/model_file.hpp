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

// JSON model files:
//   {"L1": 5, "L2": 5, "model": "tandem",
//    "components": {"1": {"1,0": 0.1, "-1,1": 0.2}, ...},
//    "measure": {"rho": 0.5, "sigma": 0.5}}
// Only jump offsets are stored; the self-loop is implied. "model" and
// "measure" are optional. alpha is recomputed on load.

#include <optional>
#include <string>
#include <string_view>

#include "mrbounds/product_form.hpp"
#include "mrbounds/walk.hpp"

namespace mrbounds {

struct ModelFile {
  TransitionKernel kernel;
  std::string model;
  std::optional<GeometricMeasure> measure;
};

std::string write_model_file(const ModelFile& f);

/// Throws ConfigError on malformed input or probabilities outside N_k.
ModelFile read_model_file(std::string_view text);

/// Parses "du,dv".
Offset parse_offset(std::string_view s);

}  // namespace mrbounds
