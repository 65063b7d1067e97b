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

// One-step expansion of the bias terms D_s(n) = F(n + e_s) - F(n).
//
// For every direction s and Z-component k with n + e_s inside S, constants
// c[s][k][v][u] are derived such that, for any reward-to-go vector F^t and any
// C-linear one-step reward F,
//
//   D_s^{t+1}(n) = F(n + e_s) - F(n) + sum_{v,u} c[s][k][v][u] D_v^t(n + u)
//
// holds for all n in Z_k. The constants come from a coupling of the two
// next-state distributions (from n + e_s and from n): equal jumps are paired
// first, leftover mass is paired in lexicographic offset order, and every
// paired endpoint difference is telescoped along a monotone lattice path
// into unit-step differences.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mrbounds/product_form.hpp"
#include "mrbounds/state_space.hpp"
#include "mrbounds/walk.hpp"

namespace mrbounds {

/// Coefficients of one (s, k) pair, indexed [v - 1][offset slot].
struct CoefficientBlock {
  std::array<std::array<double, kNumOffsets>, 2> c{};
  /// Total coupled mass (1 for stochastic kernels).
  double coupled_mass = 0.0;
  /// Mass carried by pairs whose endpoints differ.
  double moved_mass = 0.0;

  double at(int v, Offset u) const { return c[static_cast<std::size_t>(v - 1)][offset_slot(u)]; }
};

/// Throws DomainError when n + e_s leaves S for states of Z_k (D_s is not
/// defined there), InvariantError when the kernel is not stochastic.
CoefficientBlock derive_coefficients(const TransitionKernel& w, int s, ZComponent k);

/// Whether D_s is defined on Z_k, i.e. n + e_s stays in S.
bool bias_defined(int s, ZComponent k, const Grid& g);

/// All coefficient blocks of a kernel.
class BiasCoefficients {
 public:
  explicit BiasCoefficients(const TransitionKernel& w);

  const Grid& grid() const { return grid_; }
  bool defined(int s, ZComponent k) const { return defined_[idx(s)][k.slot()]; }
  const CoefficientBlock& block(int s, ZComponent k) const { return blocks_[idx(s)][k.slot()]; }
  double at(int s, ZComponent k, int v, Offset u) const { return block(s, k).at(v, u); }

  /// Rows "s,k,v,du,dv,c" for every nonzero coefficient.
  std::string to_csv() const;

 private:
  static std::size_t idx(int s) { return static_cast<std::size_t>(s - 1); }

  Grid grid_;
  std::array<std::array<bool, kNumZComponents>, 2> defined_{};
  std::array<std::array<CoefficientBlock, kNumZComponents>, 2> blocks_{};
};

/// Expected cumulative rewards F^t(n) for t = 0..horizon on the given walk.
class RewardTable {
 public:
  RewardTable(Grid grid, int horizon);

  const Grid& grid() const { return grid_; }
  int horizon() const { return horizon_; }
  double value(int t, State n) const { return values_[static_cast<std::size_t>(t)][state_index(grid_, n)]; }
  const std::vector<double>& layer(int t) const { return values_[static_cast<std::size_t>(t)]; }
  /// D_s^t(n) = F^t(n + e_s) - F^t(n); n + e_s must be in S.
  double bias(int s, int t, State n) const { return value(t, n + unit(s)) - value(t, n); }

 private:
  friend RewardTable reward_iterate(const TransitionKernel&, const CLinearFunction&, int);

  Grid grid_;
  int horizon_;
  std::vector<std::vector<double>> values_;
};

/// F^0 = 0, F^{t+1}(n) = F(n) + sum_u p[k(n)][u] F^t(n + u).
RewardTable reward_iterate(const TransitionKernel& w, const CLinearFunction& reward, int horizon);

/// One dynamic-programming step, in place of `next`.
void reward_step(const TransitionKernel& w, const CLinearFunction& reward,
                 const std::vector<double>& current, std::vector<double>& next);

/// Checks the expansion with random F^t vectors and random C-linear F.
/// Returns the largest discrepancy between both sides over all states.
double verify_identity_random(const TransitionKernel& w, const BiasCoefficients& c, int trials,
                              std::uint64_t seed = 20140101);

/// Checks the expansion along actual value-iteration layers t < horizon.
double verify_identity_iterates(const TransitionKernel& w, const BiasCoefficients& c,
                                const CLinearFunction& reward, int horizon);

}  // namespace mrbounds
