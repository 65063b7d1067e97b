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
#include <set>

#include "mrbounds/bounds_lp.hpp"
#include "mrbounds/errors.hpp"
#include "mrbounds/oracle.hpp"
#include "support.hpp"

namespace mrbounds {
namespace {

using testing::Example;

BoundsProblem problem(Example e, int l, const char* measure = "blocking") {
  const auto pair = testing::make_pair(e, l);
  return make_problem(pair.original, pair.perturbed.kernel, pair.perturbed.measure,
                      measure_by_name(measure, pair.original.grid()));
}

// The perturbed walk bounding itself.
BoundsProblem self_problem(int l, const char* measure) {
  const ProductFormWalk p = tandem_perturbed(testing::tandem_params(Example::tandem, l));
  return make_problem(p.kernel, p.kernel, p.measure, measure_by_name(measure, p.kernel.grid()));
}

std::vector<double> point_from(const LinearProgram& lp, const Certificate& cert) {
  std::vector<double> x(lp.num_variables());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const VariableRef& v = lp.variables()[j];
    x[j] = cert[v.block].coef(v.k, v.coef);
  }
  return x;
}

TEST(Bounds, TandemBracketsReferenceValue) {
  const BoundsProblem p = problem(Example::tandem, 5);
  const BoundResult r = solve_bounds(p);
  ASSERT_TRUE(r.optimal());
  const double exact = testing::reference_performance(p.original, p.reward);
  EXPECT_LE(r.lower, exact + 1e-8);
  EXPECT_GE(r.upper, exact - 1e-8);
  EXPECT_GT(r.gap(), 0.0);
  EXPECT_LE(r.lower_lp_violation, 1e-9);
  EXPECT_LE(r.upper_lp_violation, 1e-9);
}

TEST(Bounds, ContainmentAcrossFeasibleInstances) {
  for (Example e : {Example::tandem, Example::speedup, Example::coupled}) {
    for (int l : {4, 6, 8}) {
      for (const char* m : {"blocking", "qlen1", "qlen2"}) {
        const BoundsProblem p = problem(e, l, m);
        const BoundResult r = solve_bounds(p);
        ASSERT_TRUE(r.optimal()) << testing::example_name(e) << " L=" << l << " " << m;
        const double exact = testing::reference_performance(p.original, p.reward);
        EXPECT_LE(r.lower - 1e-8, exact) << testing::example_name(e) << " L=" << l << " " << m;
        EXPECT_GE(r.upper + 1e-8, exact) << testing::example_name(e) << " L=" << l << " " << m;
      }
    }
  }
}

TEST(Bounds, SlowdownInfeasibilityIsReportedNotThrown) {
  const BoundResult r = solve_bounds(problem(Example::slowdown, 6));
  EXPECT_FALSE(r.optimal());
  EXPECT_EQ(r.upper_status, LpStatus::infeasible);
  EXPECT_TRUE(std::isnan(r.upper));
  EXPECT_TRUE(std::isnan(r.lower));
}

TEST(Bounds, ZeroPerturbationCollapses) {
  for (const char* m : {"blocking", "qlen1", "qlen2", "one"}) {
    const BoundsProblem p = self_problem(6, m);
    ASSERT_TRUE(p.q.is_zero());
    const BoundResult r = solve_bounds(p);
    ASSERT_TRUE(r.optimal()) << m;
    const double target = weighted_sum(p.measure, p.reward);
    EXPECT_NEAR(r.lower, target, 1e-9) << m;
    EXPECT_NEAR(r.upper, target, 1e-9) << m;
    EXPECT_LE(certificate_check(r.upper_cert, p, 200).premise, 1e-12);
  }
}

TEST(Certificate, AuditAgainstValueIteration) {
  for (Example e : {Example::tandem, Example::speedup}) {
    const BoundsProblem p = problem(e, 5);
    const BoundResult r = solve_bounds(p);
    ASSERT_TRUE(r.optimal());
    EXPECT_LE(certificate_check(r.upper_cert, p, 500).worst(), 1e-8) << testing::example_name(e);
    EXPECT_LE(certificate_check(r.lower_cert, p, 500).worst(), 1e-8) << testing::example_name(e);
  }
}

TEST(Certificate, ConstraintsHoldAtEveryState) {
  for (Example e : {Example::tandem, Example::speedup, Example::coupled}) {
    for (const char* m : {"blocking", "qlen2"}) {
      const BoundsProblem p = problem(e, 7, m);
      const BoundResult r = solve_bounds(p);
      ASSERT_TRUE(r.optimal());
      EXPECT_LE(corner_reduction_check(r.upper_cert, p), 1e-8);
      EXPECT_LE(corner_reduction_check(r.lower_cert, p), 1e-8);
    }
  }
}

TEST(Certificate, ObjectiveMatchesDirectSummation) {
  const BoundsProblem p = problem(Example::coupled, 6, "qlen1");
  const BoundResult r = solve_bounds(p);
  ASSERT_TRUE(r.optimal());
  EXPECT_NEAR(certificate_objective(r.upper_cert, p.measure, 1.0), r.upper, 1e-9);
  EXPECT_NEAR(certificate_objective(r.lower_cert, p.measure, -1.0), r.lower, 1e-9);
}

TEST(Certificate, ScalingUpGKeepsFeasibility) {
  const BoundsProblem p = problem(Example::tandem, 6);
  const BoundResult r = solve_bounds(p);
  ASSERT_TRUE(r.optimal());
  for (BoundDirection dir : {BoundDirection::upper, BoundDirection::lower}) {
    const LinearProgram lp = assemble(p, dir);
    const StandardFormLP sf = lp.to_standard_form();
    std::vector<double> x = point_from(lp, dir == BoundDirection::upper ? r.upper_cert : r.lower_cert);
    EXPECT_LE(verify_solution(sf, x).max_violation, 1e-9);
    for (double factor : {1.0, 1.5, 10.0}) {
      std::vector<double> y = x;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (lp.variables()[j].block == Block::g) y[j] *= factor;
      EXPECT_LE(verify_solution(sf, y).max_violation, 1e-9) << factor;
    }
  }
}

TEST(Certificate, CorruptedCertificateIsCaught) {
  const BoundsProblem p = problem(Example::tandem, 5);
  const BoundResult r = solve_bounds(p);
  ASSERT_TRUE(r.optimal());
  Certificate bad = r.upper_cert;
  for (CComponent k : all_c_components())
    bad.fn[static_cast<std::size_t>(Block::g)] = bad[Block::g].with(k, 0, 0.0).with(k, 1, 0.0).with(k, 2, 0.0);
  EXPECT_GT(certificate_check(bad, p, 100).premise, 1e-6);
  EXPECT_GT(corner_reduction_check(bad, p), 1e-6);
}

TEST(Encoding, ExistentialErrorTermIsUnsound) {
  const BoundsProblem p = problem(Example::tandem, 5);
  BoundOptions opts;
  opts.encoding = ErrorTermEncoding::existential;
  const BoundResult r = solve_bounds(p, opts);
  ASSERT_EQ(r.upper_status, LpStatus::optimal);
  const double exact = testing::reference_performance(p.original, p.reward);
  EXPECT_LT(r.upper, exact - 1e-3);
  EXPECT_GT(certificate_check(r.upper_cert, p, 500).premise, 1e-6);
}

TEST(Assembly, SizeIndependentOfGrid) {
  const LinearProgram a = assemble(problem(Example::tandem, 5), BoundDirection::upper);
  EXPECT_EQ(a.num_variables(), 162u);
  for (int l : {6, 10, 40, 100}) {
    const LinearProgram b = assemble(problem(Example::tandem, l), BoundDirection::upper);
    EXPECT_EQ(b.num_variables(), a.num_variables()) << l;
    EXPECT_EQ(b.num_constraints(), a.num_constraints()) << l;
  }
}

TEST(Assembly, ExistentialAddsErrorBlocks) {
  const BoundsProblem p = problem(Example::tandem, 5);
  const LinearProgram lp = assemble(p, BoundDirection::upper, ErrorTermEncoding::existential);
  EXPECT_EQ(lp.num_variables(), 8u * 9u * 3u);
  EXPECT_TRUE(lp.index(Block::e1, CComponent(1), 0).has_value());
  EXPECT_FALSE(assemble(p, BoundDirection::upper).index(Block::e1, CComponent(1), 0).has_value());
}

TEST(Assembly, RowsAreDistinctAndNamed) {
  const LinearProgram lp = assemble(problem(Example::coupled, 6), BoundDirection::lower);
  std::set<std::pair<std::vector<std::pair<std::size_t, double>>, double>> seen;
  for (const LpRow& r : lp.rows()) {
    EXPECT_TRUE(seen.insert({r.terms, r.rhs}).second) << r.origin;
    EXPECT_FALSE(r.origin.empty());
  }
  EXPECT_EQ(lp.sense(), Sense::maximize);
  EXPECT_EQ(lp.variable_name(0).rfind("Fbar_", 0), 0u);
}

TEST(Assembly, ExportedFileReproducesOptimum) {
  const BoundsProblem p = problem(Example::speedup, 6, "qlen1");
  for (BoundDirection dir : {BoundDirection::upper, BoundDirection::lower}) {
    const LinearProgram lp = assemble(p, dir);
    const StandardFormLP a = lp.to_standard_form();
    const StandardFormLP b = read_lp_file(export_lp(lp));
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.b, b.b);
    EXPECT_EQ(a.c, b.c);
    const LpSolution sa = solve(a), sb = solve(b);
    ASSERT_EQ(sa.status, LpStatus::optimal);
    EXPECT_EQ(sa.objective, sb.objective);
  }
}

TEST(Problem, Validation) {
  const auto pair = testing::make_pair(Example::tandem, 3);
  EXPECT_THROW(make_problem(pair.original, pair.perturbed.kernel, pair.perturbed.measure,
                            measure_blocking(pair.original.grid())),
               ConfigError);
  const auto ok = testing::make_pair(Example::tandem, 5);
  const TransitionKernel diagonal = ok.perturbed.kernel.with(CComponent(9), {-1, 1}, 0.1);
  EXPECT_THROW(make_problem(ok.original, diagonal, ok.perturbed.measure, measure_blocking(ok.original.grid())),
               ConfigError);
}

}  // namespace
}  // namespace mrbounds
