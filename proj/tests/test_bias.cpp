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

#include <algorithm>
#include <cmath>
#include <random>

#include "mrbounds/bias.hpp"
#include "mrbounds/errors.hpp"
#include "mrbounds/models.hpp"
#include "support.hpp"

namespace mrbounds {
namespace {

using testing::all_states;
using testing::Example;

// Right-hand side of the one-step expansion evaluated from explicit F^t values.
double expansion_rhs(const BiasCoefficients& c, const CLinearFunction& f,
                     const std::vector<double>& ft, int s, State n, const Grid& g) {
  auto value = [&](State m) { return ft[testing::idx(g, m)]; };
  double rhs = testing::reward_at(f, n + unit(s), g) - testing::reward_at(f, n, g);
  const ZComponent k = z_component(n, g);
  for (int v = 1; v <= 2; ++v) {
    for (Offset u : testing::kAllOffsets) {
      const double coef = c.at(s, k, v, u);
      if (coef == 0.0) continue;
      const State m = n + u;
      EXPECT_TRUE(contains(g, m) && contains(g, m + unit(v)))
          << "coefficient references a bias outside S at " << to_string(n);
      rhs += coef * (value(m + unit(v)) - value(m));
    }
  }
  return rhs;
}

CLinearFunction random_reward(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CLinearFunction f;
  for (CComponent k : all_c_components())
    for (int c = 0; c < 3; ++c) f = f.with(k, c, d(rng));
  return f;
}

// Max discrepancy of the expansion against one-step expectations of random F^t.
double reference_identity_residual(const TransitionKernel& w, int trials) {
  const Grid g = w.grid();
  const BiasCoefficients c(w);
  const auto p = testing::dense_matrix(w);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const CLinearFunction f = random_reward(rng);
    std::vector<double> ft(p.size());
    for (double& x : ft) x = d(rng);
    std::vector<double> next(p.size());
    for (State n : all_states(g)) {
      double s = testing::reward_at(f, n, g);
      for (std::size_t m = 0; m < p.size(); ++m) s += p[testing::idx(g, n)][m] * ft[m];
      next[testing::idx(g, n)] = s;
    }
    for (int s = 1; s <= 2; ++s) {
      for (State n : all_states(g)) {
        if (!contains(g, n + unit(s))) continue;
        const double lhs = next[testing::idx(g, n + unit(s))] - next[testing::idx(g, n)];
        worst = std::max(worst, std::abs(lhs - expansion_rhs(c, f, ft, s, n, g)));
      }
    }
  }
  return worst;
}

TEST(Coefficients, TranslationInvariantInterior) {
  const TransitionKernel w = tandem(testing::tandem_params(Example::tandem, 6));
  const Grid g = w.grid();
  const BiasCoefficients c(w);
  for (State n : {State{2, 2}, State{3, 3}, State{4, 2}}) {
    const ZComponent k = z_component(n, g);
    for (Offset u : testing::kAllOffsets) {
      EXPECT_NEAR(c.at(1, k, 1, u), w.prob(CComponent(9), u), 1e-15) << to_string(u);
      EXPECT_EQ(c.at(1, k, 2, u), 0.0);
    }
  }
}

TEST(Coefficients, RightBoundaryDropsRejectedArrivals) {
  // From n + e_1 on i = L1 the arrival is rejected and lands where the
  // arrival from n lands, so that mass contributes no bias term.
  const TransitionKernel w = tandem(testing::tandem_params(Example::tandem, 6));
  const Grid g = w.grid();
  const BiasCoefficients c(w);
  const ZComponent k = z_component({5, 3}, g);
  ASSERT_TRUE(c.defined(1, k));
  EXPECT_EQ(c.at(1, k, 1, {1, 0}), 0.0);
  EXPECT_NEAR(c.at(1, k, 1, {-1, 1}), 0.2, 1e-15);
  EXPECT_NEAR(c.at(1, k, 1, {0, -1}), 0.2, 1e-15);
  EXPECT_NEAR(c.at(1, k, 1, kStay), 0.5, 1e-15);
  for (Offset u : testing::kAllOffsets) EXPECT_EQ(c.at(1, k, 2, u), 0.0);
}

TEST(Coefficients, RightBoundarySpeedupNeedsVerticalTerm) {
  // Node 2 serves faster on i = L1; the extra departure mass is telescoped
  // through a vertical step.
  const TransitionKernel w = tandem(testing::tandem_params(Example::speedup, 6));
  const Grid g = w.grid();
  const BiasCoefficients c(w);
  const ZComponent k = z_component({5, 3}, g);
  double vertical = 0.0;
  for (Offset u : testing::kAllOffsets) vertical += std::abs(c.at(1, k, 2, u));
  EXPECT_NEAR(vertical, 0.04, 1e-15);
}

TEST(Coefficients, UndefinedWhereStepLeavesGrid) {
  const Grid g{6, 6};
  const BiasCoefficients c(tandem(testing::tandem_params(Example::tandem, 6)));
  EXPECT_FALSE(c.defined(1, z_component({6, 3}, g)));
  EXPECT_FALSE(c.defined(2, z_component({3, 6}, g)));
  EXPECT_TRUE(c.defined(1, z_component({5, 6}, g)));
  EXPECT_FALSE(bias_defined(1, z_component({6, 0}, g), g));
  EXPECT_THROW(derive_coefficients(tandem(testing::tandem_params(Example::tandem, 6)), 1,
                                   z_component({6, 0}, g)),
               DomainError);
}

TEST(Coefficients, BoundedAndMassConserving) {
  for (Example e : testing::kExamples) {
    const TransitionKernel w = testing::make_pair(e, 6).original;
    const Grid g = w.grid();
    const BiasCoefficients c(w);
    for (int s = 1; s <= 2; ++s) {
      for (ZComponent k : all_z_components()) {
        if (!c.defined(s, k)) continue;
        const CoefficientBlock& b = c.block(s, k);
        EXPECT_NEAR(b.coupled_mass, 1.0, 1e-15);
        EXPECT_LE(b.moved_mass, 1.0 + 1e-15);
        for (int v = 1; v <= 2; ++v)
          for (Offset u : testing::kAllOffsets) EXPECT_LE(std::abs(b.at(v, u)), 2.0);
      }
    }
    (void)g;
  }
}

TEST(Identity, ReferenceCheckAllModels) {
  for (Example e : testing::kExamples) {
    for (int l : {4, 6, 9}) {
      const TransitionKernel w = testing::make_pair(e, l).original;
      EXPECT_LE(reference_identity_residual(w, 100), 1e-12) << testing::example_name(e) << " L=" << l;
    }
  }
}

TEST(Identity, ReferenceCheckPerturbedWalks) {
  for (Example e : testing::kExamples) {
    const TransitionKernel w = testing::make_pair(e, 5).perturbed.kernel;
    EXPECT_LE(reference_identity_residual(w, 100), 1e-12) << testing::example_name(e);
  }
}

TEST(Identity, LibraryVerifierAgrees) {
  const TransitionKernel t = tandem(testing::tandem_params(Example::tandem, 6));
  EXPECT_LE(verify_identity_random(t, BiasCoefficients(t), 100), 1e-12);
  const TransitionKernel c = coupled(testing::coupled_params(6));
  EXPECT_LE(verify_identity_random(c, BiasCoefficients(c), 100), 1e-12);
  const TransitionKernel id(Grid{5, 5});
  EXPECT_LE(verify_identity_random(id, BiasCoefficients(id), 100), 1e-14);
}

TEST(Identity, IdentityChainShiftsBias) {
  const TransitionKernel id(Grid{5, 5});
  const BiasCoefficients c(id);
  for (int s = 1; s <= 2; ++s) {
    for (ZComponent k : all_z_components()) {
      if (!c.defined(s, k)) continue;
      for (int v = 1; v <= 2; ++v)
        for (Offset u : testing::kAllOffsets)
          EXPECT_EQ(c.at(s, k, v, u), (v == s && u == kStay) ? 1.0 : 0.0);
    }
  }
}

TEST(Identity, HoldsAlongValueIteration) {
  for (Example e : testing::kExamples) {
    const TransitionKernel w = testing::make_pair(e, 5).original;
    const CLinearFunction f = measure_blocking(w.grid());
    EXPECT_LE(verify_identity_iterates(w, BiasCoefficients(w), f, 200), 1e-10) << testing::example_name(e);
  }
}

TEST(RewardIterate, MatchesDenseDynamicProgramming) {
  const TransitionKernel w = tandem(testing::tandem_params(Example::tandem, 5));
  const Grid g = w.grid();
  const CLinearFunction f = measure_qlen1(g);
  const RewardTable table = reward_iterate(w, f, 50);
  const auto ref = testing::reference_iterates(w, f, 50);
  for (int t = 0; t <= 50; ++t)
    for (State n : all_states(g))
      EXPECT_NEAR(table.value(t, n), ref[static_cast<std::size_t>(t)][testing::idx(g, n)], 1e-11);
}

TEST(RewardIterate, FirstLayers) {
  const TransitionKernel w = tandem(testing::tandem_params(Example::tandem, 5));
  const Grid g = w.grid();
  const CLinearFunction f = measure_blocking(g);
  const RewardTable table = reward_iterate(w, f, 2);
  for (State n : all_states(g)) {
    EXPECT_EQ(table.value(0, n), 0.0);
    EXPECT_EQ(table.value(1, n), testing::reward_at(f, n, g));
  }
  // At (L1, j) arrivals are rejected: F^2 = 1 + P(stay on i = L1).
  for (int j = 0; j <= g.l2; ++j) {
    const State n{g.l1, j};
    double expect = 1.0;
    for (Offset u : testing::kAllOffsets)
      if (contains(g, n + u)) expect += w.transition_prob(n, u) * testing::reward_at(f, n + u, g);
    EXPECT_NEAR(table.value(2, n), expect, 1e-15);
  }
}

TEST(Coefficients, CsvDump) {
  const BiasCoefficients c(tandem(testing::tandem_params(Example::tandem, 4)));
  const std::string csv = c.to_csv();
  EXPECT_EQ(csv.rfind("s,k,v,du,dv,c\n", 0), 0u);
  EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 25);
}

}  // namespace
}  // namespace mrbounds
