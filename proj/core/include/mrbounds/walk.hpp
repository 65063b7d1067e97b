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

#include <array>
#include <string>
#include <vector>

#include "mrbounds/state_space.hpp"

namespace mrbounds {

/// Per-component jump table indexed by [C-component slot][offset slot].
using JumpTable = std::array<std::array<double, kNumOffsets>, kNumCComponents>;

/// A homogeneous random walk on a finite grid. Each C-component carries its
/// own jump probabilities; the self-loop is implicit and absorbs whatever
/// mass the jumps leave.
class TransitionKernel {
 public:
  explicit TransitionKernel(Grid grid);

  const Grid& grid() const { return grid_; }

  /// Copy with p[k][u] replaced. Throws DomainError for u = (0,0) or u
  /// outside N_k.
  TransitionKernel with(CComponent k, Offset u, double p) const;

  /// p[k][u], self-loop included; zero outside N_k.
  double prob(CComponent k, Offset u) const;
  /// Sum of the non-self jump probabilities of component k.
  double jump_mass(CComponent k) const;
  /// p[k(n)][u] for the component of n.
  double transition_prob(State n, Offset u) const;

  const JumpTable& jumps() const { return jumps_; }

  friend bool operator==(const TransitionKernel&, const TransitionKernel&) = default;

 private:
  Grid grid_;
  JumpTable jumps_{};
};

/// Continuous-time jump rates per component, same layout as the kernel.
class CtmcRates {
 public:
  explicit CtmcRates(Grid grid) : grid_(grid) {}

  const Grid& grid() const { return grid_; }
  CtmcRates with(CComponent k, Offset u, double rate) const;
  double rate(CComponent k, Offset u) const;
  double outflow(CComponent k) const;
  double max_outflow() const;
  const JumpTable& table() const { return rates_; }

 private:
  Grid grid_;
  JumpTable rates_{};
};

/// Uniformization with parameter 1: jump probabilities equal the rates.
/// Throws NormalizationError if any component's outflow exceeds 1.
TransitionKernel uniformize(const CtmcRates& rates);

/// Divides all rates by `lambda`, which must dominate every outflow.
CtmcRates rescale(const CtmcRates& rates, double lambda);

struct WalkDiagnostics {
  bool stochastic = true;
  bool confined = true;  // no mass outside N_k
  bool irreducible = false;
  bool aperiodic = false;
  int period = 0;
  std::vector<std::string> issues;

  bool ok() const { return stochastic && confined && irreducible && aperiodic; }
};

/// Structural checks of the explicit chain on S. Problems are reported, not
/// thrown.
WalkDiagnostics validate(const TransitionKernel& w);

}  // namespace mrbounds
