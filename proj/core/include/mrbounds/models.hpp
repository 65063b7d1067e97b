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

#include <string>
#include <string_view>

#include "mrbounds/product_form.hpp"
#include "mrbounds/walk.hpp"

namespace mrbounds {

enum class TandemVariant {
  plain,
  /// Node 2 serves at a lower rate while node 1 is idle.
  slowdown,
  /// Node 2 serves at a higher rate while node 1 is saturated.
  speedup,
};

struct TandemParams {
  double lambda = 0.1;
  double mu1 = 0.2;
  double mu2 = 0.2;
  Grid grid{5, 5};
  TandemVariant variant = TandemVariant::plain;
  /// Service rate of node 2 in the variant regime (slow-down or speed-up).
  double mu2_variant = 0.0;

  /// Throws ConfigError on invalid rates.
  void check() const;
};

struct CoupledParams {
  double lambda1 = 0.1;
  double lambda2 = 0.1;
  double mu1 = 0.2;
  double mu2 = 0.2;
  /// Node 1 rate while node 2 is saturated.
  double mu1_sat = 0.4;
  /// Node 2 rate while node 1 is saturated.
  double mu2_sat = 0.3;
  Grid grid{5, 5};

  void check() const;
};

/// A perturbed walk together with its product-form invariant measure.
struct ProductFormWalk {
  TransitionKernel kernel;
  GeometricMeasure measure;
};

/// Two-node tandem with blocking: arrivals rejected at i = L1, node 1 blocked
/// at j = L2.
TransitionKernel tandem(const TandemParams& p);

/// The perturbed tandem walk shared by all three variants. Its invariant
/// measure is alpha (lambda/mu1)^i (lambda/mu2)^j; construction fails hard if
/// global balance is violated beyond 1e-12.
ProductFormWalk tandem_perturbed(const TandemParams& p);

/// Coupled processors with finite buffers: saturation of one node changes the
/// service rate of the other.
TransitionKernel coupled(const CoupledParams& p);

/// Two independent M/M/1/L queues.
ProductFormWalk coupled_perturbed(const CoupledParams& p);

/// Indicator of i = L1 (C_4, C_7, C_8).
CLinearFunction measure_blocking(const Grid& g);
/// F(i, j) = i.
CLinearFunction measure_qlen1(const Grid& g);
/// F(i, j) = j.
CLinearFunction measure_qlen2(const Grid& g);
/// F = 1.
CLinearFunction measure_one(const Grid& g);

/// "blocking" | "qlen1" | "qlen2" | "one". Throws ConfigError otherwise.
CLinearFunction measure_by_name(std::string_view name, const Grid& g);

}  // namespace mrbounds
