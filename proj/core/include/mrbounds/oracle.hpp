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

// Exact answers on the finite state space by brute force.

#include <string>
#include <vector>

#include "mrbounds/bounds_lp.hpp"
#include "mrbounds/product_form.hpp"
#include "mrbounds/walk.hpp"

namespace mrbounds {

struct StationaryDistribution {
  Grid grid;
  std::vector<double> m;  // indexed by state_index

  double operator()(State n) const { return m[state_index(grid, n)]; }
};

/// Dense LU solve of the balance equations with one equation replaced by
/// sum m = 1. Throws DomainError for a reducible chain.
StationaryDistribution stationary(const TransitionKernel& w);

/// Power iteration m <- mP from the uniform vector, for grids too large for
/// the dense solve. Requires an aperiodic chain.
StationaryDistribution stationary_power(const TransitionKernel& w, double tol = 1e-13,
                                        int max_iterations = 1000000);

/// ||mP - m||_inf.
double stationary_residual(const TransitionKernel& w, const StationaryDistribution& m);

/// sum_n m(n) F(n).
double performance(const StationaryDistribution& m, const CLinearFunction& f);
double performance(const TransitionKernel& w, const CLinearFunction& f);

inline constexpr double kContainmentTol = 1e-8;

struct Containment {
  bool pass = false;
  double lower_margin = 0.0;  // exact - lower
  double upper_margin = 0.0;  // upper - exact
};

/// lower - tol <= exact <= upper + tol. NaN bounds fail.
Containment containment(const BoundResult& b, double exact, double tol = kContainmentTol);

}  // namespace mrbounds
