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
#include <vector>

#include "mrbounds/state_space.hpp"
#include "mrbounds/walk.hpp"

namespace mrbounds {

/// alpha * rho^i * sigma^j on a finite grid, normalized to a probability
/// measure.
struct GeometricMeasure {
  double rho = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;
  Grid grid;

  double operator()(State n) const;
  /// The product-form scheme is stated for (rho, sigma) in (0,1)^2. Larger
  /// ratios still normalize on a finite grid.
  bool outside_unit_box() const { return rho >= 1.0 || sigma >= 1.0; }
};

/// 1 / (sum_i rho^i * sum_j sigma^j). Throws DomainError for nonpositive
/// ratios.
double normalize(double rho, double sigma, const Grid& g);
GeometricMeasure make_measure(double rho, double sigma, const Grid& g);

struct BalanceReport {
  double max_residual = 0.0;
  State worst;
};

/// Max over S of |m(n) - sum_u p[k(n+u)][-u] m(n+u)|.
BalanceReport balance_residual(const TransitionKernel& w, const GeometricMeasure& m);

/// q[k][u] = perturbed - original, self-loops included.
class Perturbation {
 public:
  explicit Perturbation(Grid grid) : grid_(grid) {}
  Perturbation(Grid grid, const JumpTable& q) : grid_(grid), q_(q) {}

  const Grid& grid() const { return grid_; }
  double at(CComponent k, Offset u) const;
  /// q[k(n)][u].
  double at(State n, Offset u) const;
  bool is_zero() const;
  const JumpTable& table() const { return q_; }

 private:
  Grid grid_;
  JumpTable q_{};
};

/// Throws ConfigError if the kernels live on different grids, or if they
/// differ at any offset other than the unit steps and the self-loop.
Perturbation perturbation(const TransitionKernel& original, const TransitionKernel& perturbed);

/// A function that is affine in (i, j) on each C-component:
/// F(n) = f[k][0] + f[k][1] i + f[k][2] j.
class CLinearFunction {
 public:
  using Coefficients = std::array<std::array<double, 3>, kNumCComponents>;

  CLinearFunction() = default;
  explicit CLinearFunction(const Coefficients& f) : f_(f) {}

  double coef(CComponent k, int d) const { return f_[k.slot()][static_cast<std::size_t>(d)]; }
  CLinearFunction with(CComponent k, int d, double value) const;
  /// Evaluation with the coefficients of component k at (i, j); used when the
  /// component is known without looking up n.
  double eval(CComponent k, State n) const;
  double operator()(State n, const Grid& g) const { return eval(c_component(n, g), n); }
  const Coefficients& coefficients() const { return f_; }

 private:
  Coefficients f_{};
};

/// W[k][d] = sum over n in C_k of m(n) * {1, i, j}[d].
using ComponentWeights = std::array<std::array<double, 3>, kNumCComponents>;
ComponentWeights component_weights(const GeometricMeasure& m);

/// sum_{n in S} F(n) m(n) by direct summation.
double weighted_sum(const GeometricMeasure& m, const CLinearFunction& f);
/// Same quantity via precomputed component weights.
double weighted_sum(const ComponentWeights& w, const CLinearFunction& f);

}  // namespace mrbounds
