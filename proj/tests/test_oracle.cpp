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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mrbounds/errors.hpp"
#include "mrbounds/oracle.hpp"
#include "support.hpp"

namespace mrbounds {
namespace {

using testing::all_states;
using testing::Example;

TEST(Stationary, SymmetricWalkIsUniform) {
  TransitionKernel w(Grid{2, 2});
  for (CComponent k : all_c_components())
    for (Offset u : neighbors(k))
      if (is_unit_step(u)) w = w.with(k, u, 0.125);
  const StationaryDistribution m = stationary(w);
  for (State n : all_states(w.grid())) EXPECT_NEAR(m(n), 1.0 / 9.0, 1e-15);
}

TEST(Stationary, MatchesProductFormOfPerturbedWalks) {
  for (Example e : testing::kExamples) {
    for (int l : {4, 8, 12}) {
      const auto pair = testing::make_pair(e, l);
      const StationaryDistribution m = stationary(pair.perturbed.kernel);
      for (State n : all_states(m.grid))
        EXPECT_NEAR(m(n), pair.perturbed.measure(n), 1e-12) << testing::example_name(e);
    }
  }
}

TEST(Stationary, MatchesReferenceEliminationAndIsInvariant) {
  for (Example e : testing::kExamples) {
    const TransitionKernel w = testing::make_pair(e, 7).original;
    const StationaryDistribution m = stationary(w);
    const auto ref = testing::reference_stationary(w);
    double total = 0.0;
    for (State n : all_states(w.grid())) {
      EXPECT_NEAR(m(n), ref[testing::idx(w.grid(), n)], 1e-13);
      total += m(n);
    }
    EXPECT_NEAR(total, 1.0, 1e-15);
    EXPECT_LE(stationary_residual(w, m), 1e-12);
  }
}

TEST(Stationary, PowerIterationAgrees) {
  const TransitionKernel w = tandem(testing::tandem_params(Example::speedup, 6));
  const StationaryDistribution a = stationary(w), b = stationary_power(w);
  for (State n : all_states(w.grid())) EXPECT_NEAR(a(n), b(n), 1e-11);
}

TEST(Stationary, ReducibleChainIsRejected) {
  EXPECT_THROW(stationary(TransitionKernel(Grid{3, 3})), DomainError);
}

TEST(Performance, ConstantRewardIsOne) {
  const TransitionKernel w = coupled(testing::coupled_params(6));
  EXPECT_NEAR(performance(w, measure_one(w.grid())), 1.0, 1e-14);
}

TEST(Performance, PerturbedWalkMatchesWeightedSum) {
  const ProductFormWalk p = tandem_perturbed(testing::tandem_params(Example::tandem, 7));
  const CLinearFunction f = measure_blocking(p.kernel.grid());
  EXPECT_NEAR(performance(p.kernel, f), weighted_sum(p.measure, f), 1e-12);
}

TEST(Performance, MatchesReference) {
  for (Example e : testing::kExamples) {
    const TransitionKernel w = testing::make_pair(e, 5).original;
    for (const char* name : {"blocking", "qlen1", "qlen2"}) {
      const CLinearFunction f = measure_by_name(name, w.grid());
      EXPECT_NEAR(performance(w, f), testing::reference_performance(w, f), 1e-13) << name;
    }
  }
}

TEST(Performance, BlockingDecreasesWithBuffer) {
  for (Example e : {Example::tandem, Example::speedup}) {
    double prev = 2.0;
    for (int l = 4; l <= 12; ++l) {
      const TransitionKernel w = tandem(testing::tandem_params(e, l));
      const double v = performance(w, measure_blocking(w.grid()));
      EXPECT_LT(v, prev) << "L=" << l;
      prev = v;
    }
  }
}

TEST(Containment, Tolerances) {
  BoundResult b;
  b.lower = 0.1;
  b.upper = 0.2;
  b.lower_status = b.upper_status = LpStatus::optimal;
  EXPECT_TRUE(containment(b, 0.15).pass);
  EXPECT_TRUE(containment(b, 0.2 + 5e-9).pass);
  EXPECT_FALSE(containment(b, 0.2 + 2e-8).pass);
  EXPECT_FALSE(containment(b, 0.1 - 2e-8).pass);
  EXPECT_NEAR(containment(b, 0.15).lower_margin, 0.05, 1e-15);
  b.upper = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(containment(b, 0.15).pass);
}

}  // namespace
}  // namespace mrbounds
