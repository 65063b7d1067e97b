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

#include "mrbounds/errors.hpp"
#include "mrbounds/models.hpp"
#include "support.hpp"

namespace mrbounds {
namespace {

using testing::all_states;
using testing::Example;

TEST(Models, ErgodicForAllExamples) {
  for (Example e : testing::kExamples) {
    for (int l : {2, 4, 7, 12}) {
      const auto pair = testing::make_pair(e, l);
      EXPECT_TRUE(validate(pair.original).ok()) << testing::example_name(e) << " L=" << l;
      EXPECT_TRUE(validate(pair.perturbed.kernel).ok()) << testing::example_name(e) << " L=" << l;
    }
  }
}

TEST(Models, PerturbationIsUnitDirectional) {
  for (Example e : testing::kExamples) {
    for (int l = 4; l <= 12; ++l) {
      const auto pair = testing::make_pair(e, l);
      EXPECT_NO_THROW(perturbation(pair.original, pair.perturbed.kernel));
      EXPECT_LE(balance_residual(pair.perturbed.kernel, pair.perturbed.measure).max_residual, 1e-12);
    }
  }
}

TEST(Models, MeasureRatios) {
  const ProductFormWalk t = tandem_perturbed(testing::tandem_params(Example::tandem, 5));
  EXPECT_DOUBLE_EQ(t.measure.rho, 0.5);
  EXPECT_DOUBLE_EQ(t.measure.sigma, 0.5);
  const ProductFormWalk c = coupled_perturbed(testing::coupled_params(5));
  EXPECT_DOUBLE_EQ(c.measure.rho, 0.5);
  EXPECT_DOUBLE_EQ(c.measure.sigma, 0.5);
}

TEST(Models, TandemTransitions) {
  const TransitionKernel w = tandem(testing::tandem_params(Example::tandem, 5));
  EXPECT_EQ(w.transition_prob({2, 2}, {1, 0}), 0.1);
  EXPECT_EQ(w.transition_prob({2, 2}, {-1, 1}), 0.2);
  EXPECT_EQ(w.transition_prob({2, 2}, {0, -1}), 0.2);
  EXPECT_EQ(w.transition_prob({5, 2}, {1, 0}), 0.0);   // arrivals rejected at L1
  EXPECT_EQ(w.transition_prob({3, 5}, {-1, 1}), 0.0);  // node 1 blocked at L2
}

TEST(Models, VariantsChangeOnlyTheirRegime) {
  const TransitionKernel plain = tandem(testing::tandem_params(Example::tandem, 5));
  const TransitionKernel slow = tandem(testing::tandem_params(Example::slowdown, 5));
  const TransitionKernel fast = tandem(testing::tandem_params(Example::speedup, 5));
  EXPECT_NEAR(slow.transition_prob({0, 3}, {0, -1}), 0.1, 1e-15);
  EXPECT_EQ(slow.transition_prob({2, 3}, {0, -1}), 0.2);
  EXPECT_NEAR(fast.transition_prob({5, 3}, {0, -1}), 0.24, 1e-15);
  EXPECT_EQ(fast.transition_prob({3, 3}, {0, -1}), 0.2);
  EXPECT_EQ(plain.transition_prob({0, 3}, {0, -1}), 0.2);
}

TEST(Models, CoupledSaturationRates) {
  const TransitionKernel w = coupled(testing::coupled_params(5));
  EXPECT_EQ(w.transition_prob({2, 2}, {-1, 0}), 0.2);
  EXPECT_EQ(w.transition_prob({2, 5}, {-1, 0}), 0.4);
  EXPECT_EQ(w.transition_prob({5, 2}, {0, -1}), 0.3);
}

TEST(Models, RejectsInvalidParameters) {
  TandemParams p = testing::tandem_params(Example::tandem, 5);
  p.mu1 = 0.0;
  EXPECT_THROW(tandem(p), ConfigError);
  p = testing::tandem_params(Example::slowdown, 5);
  p.mu2_variant = 0.3;
  EXPECT_THROW(tandem(p), ConfigError);
  CoupledParams c = testing::coupled_params(5);
  c.mu1_sat = 0.1;
  EXPECT_THROW(coupled(c), ConfigError);
}

TEST(Measures, PointwiseValues) {
  const Grid g{6, 5};
  const CLinearFunction b = measure_blocking(g), q1 = measure_qlen1(g), q2 = measure_qlen2(g),
                        one = measure_one(g);
  for (State n : all_states(g)) {
    EXPECT_EQ(b(n, g), n.i == g.l1 ? 1.0 : 0.0);
    EXPECT_EQ(q1(n, g), static_cast<double>(n.i));
    EXPECT_EQ(q2(n, g), static_cast<double>(n.j));
    EXPECT_EQ(one(n, g), 1.0);
  }
  EXPECT_THROW(measure_by_name("throughput", g), ConfigError);
}

}  // namespace
}  // namespace mrbounds
