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

// Linear program whose feasible points certify upper and lower bounds on a
// stationary performance measure sum_n m(n) F(n) of a walk, in terms of the
// product-form measure of a perturbed walk.
//
// All variable functions (Fbar, G, A_s, B_s and, in the literal encoding,
// E_s) are C-linear, so the program has at most 8 x 9 x 3 variables whatever
// the grid size. Every constraint is affine in n on each Z-component and is
// imposed at the corners of that component only.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrbounds/bias.hpp"
#include "mrbounds/product_form.hpp"
#include "mrbounds/simplex.hpp"
#include "mrbounds/walk.hpp"

namespace mrbounds {

enum class Block { fbar = 0, g, a1, a2, b1, b2, e1, e2 };
inline constexpr std::size_t kNumBlocks = 8;
std::string block_name(Block b);
/// A_s / B_s block for direction s.
inline Block a_block(int s) { return s == 1 ? Block::a1 : Block::a2; }
inline Block b_block(int s) { return s == 1 ? Block::b1 : Block::b2; }

enum class BoundDirection { upper, lower };

/// How the error term sum_u q_u D_u(n) enters the premise |Fbar - F + .| <= G.
enum class ErrorTermEncoding {
  /// The premise must hold for every bias value in [-A_s, B_s]; each term
  /// contributes its worst case q*B or |q|*A. Sound.
  robust,
  /// The bias values are replaced by free C-linear variables E_s with
  /// -A_s <= E_s <= B_s, requiring the premise only for one choice of E.
  /// Kept for comparison; it does not imply the premise for the true bias
  /// terms and can yield bounds that exclude the exact value.
  existential,
};

/// Everything a bound computation needs, validated together.
struct BoundsProblem {
  TransitionKernel original;
  TransitionKernel perturbed;
  GeometricMeasure measure;
  CLinearFunction reward;
  Perturbation q;
  BiasCoefficients bias;
};

/// Checks grid size, the unit-direction form of the perturbation and that no
/// error term references a bias outside S; derives the bias coefficients of
/// the original walk. Throws ConfigError.
BoundsProblem make_problem(const TransitionKernel& original, const TransitionKernel& perturbed,
                           const GeometricMeasure& measure, const CLinearFunction& reward);

struct VariableRef {
  Block block;
  CComponent k;
  int coef;  // 0 constant, 1 coefficient of i, 2 coefficient of j
};

struct LpRow {
  std::vector<std::pair<std::size_t, double>> terms;  // sorted by variable
  double rhs = 0.0;                                    // terms <= rhs
  std::string origin;
};

class LinearProgram {
 public:
  const std::vector<VariableRef>& variables() const { return vars_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  Sense sense() const { return sense_; }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  /// Column of a coefficient, or nullopt if the block is not part of the LP.
  std::optional<std::size_t> index(Block b, CComponent k, int coef) const;
  /// e.g. "Fbar_k4_c0".
  std::string variable_name(std::size_t j) const;

  StandardFormLP to_standard_form() const;

 private:
  friend LinearProgram assemble(const BoundsProblem&, BoundDirection, ErrorTermEncoding);

  std::vector<VariableRef> vars_;
  std::array<int, kNumBlocks> block_offset_{};
  std::vector<LpRow> rows_;
  std::vector<double> objective_;
  Sense sense_ = Sense::minimize;
};

/// Upper: minimize sum (Fbar + G) m. Lower: maximize sum (Fbar - G) m.
LinearProgram assemble(const BoundsProblem& p, BoundDirection dir,
                       ErrorTermEncoding enc = ErrorTermEncoding::robust);

/// Optimal variable functions of one solve.
struct Certificate {
  std::array<CLinearFunction, kNumBlocks> fn{};
  bool has_e = false;
  double objective = 0.0;

  const CLinearFunction& operator[](Block b) const { return fn[static_cast<std::size_t>(b)]; }
};

Certificate certificate_from(const LinearProgram& lp, const std::vector<double>& x);

struct BoundResult {
  double lower = 0.0;
  double upper = 0.0;
  LpStatus lower_status = LpStatus::infeasible;
  LpStatus upper_status = LpStatus::infeasible;
  Certificate lower_cert;
  Certificate upper_cert;
  std::size_t num_variables = 0;
  std::size_t num_constraints = 0;
  /// verify_solution violations of the two optimal points.
  double lower_lp_violation = 0.0;
  double upper_lp_violation = 0.0;

  bool optimal() const {
    return lower_status == LpStatus::optimal && upper_status == LpStatus::optimal;
  }
  double gap() const { return upper - lower; }
};

struct BoundOptions {
  ErrorTermEncoding encoding = ErrorTermEncoding::robust;
  SimplexOptions simplex{};
};

/// Assembles and solves both directions. Infeasible or unbounded programs are
/// reported through the statuses with NaN bounds, not thrown.
BoundResult solve_bounds(const BoundsProblem& p, const BoundOptions& opts = {});

/// Worst violations found when auditing a certificate against the true bias
/// terms of the original walk.
struct CertificateAudit {
  double premise = 0.0;  // |Fbar - F + sum_u q_u D_u^t| - G
  double bias = 0.0;     // max(D_s^t - B_s, -A_s - D_s^t)
  double worst() const { return std::max(premise, bias); }
};

/// Recomputes F^t on the original walk for t = 0..horizon and checks the
/// premise pointwise together with -A_s <= D_s^t <= B_s.
CertificateAudit certificate_check(const Certificate& cert, const BoundsProblem& p, int horizon);

/// Evaluates every constraint family (with the max terms evaluated directly)
/// at every state of S, not only at corners. Returns the worst violation.
double corner_reduction_check(const Certificate& cert, const BoundsProblem& p);

/// sum_n (Fbar(n) + sign * G(n)) m(n) by direct summation.
double certificate_objective(const Certificate& cert, const GeometricMeasure& m, double sign);

/// LP text of an assembled program.
std::string export_lp(const LinearProgram& lp);

}  // namespace mrbounds
