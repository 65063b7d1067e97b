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

// Dense two-phase primal simplex for small linear programs of the form
//
//   minimize / maximize  c'x   subject to  A x <= b,  x_j free or x_j >= 0.
//
// Free variables are pivoted into the basis up front and never leave it;
// the remaining problem runs a two-phase tableau with a Harris ratio test.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mrbounds {

enum class Sense { minimize, maximize };

struct StandardFormLP {
  std::size_t num_rows = 0;
  std::size_t num_vars = 0;
  std::vector<double> a;  // row-major, num_rows x num_vars
  std::vector<double> b;
  std::vector<double> c;
  std::vector<bool> free;  // per variable; false means x_j >= 0
  Sense sense = Sense::minimize;
  std::vector<std::string> var_names;  // optional
  std::vector<std::string> row_names;  // optional

  StandardFormLP() = default;
  StandardFormLP(std::size_t rows, std::size_t vars)
      : num_rows(rows), num_vars(vars), a(rows * vars, 0.0), b(rows, 0.0), c(vars, 0.0),
        free(vars, false) {}

  double& at(std::size_t r, std::size_t j) { return a[r * num_vars + j]; }
  double at(std::size_t r, std::size_t j) const { return a[r * num_vars + j]; }

  /// Throws DomainError on inconsistent dimensions or non-finite entries.
  void check() const;
};

enum class LpStatus { optimal, infeasible, unbounded };
std::string to_string(LpStatus s);

enum class PivotRule {
  bland,
  /// Most negative reduced cost, falling back to Bland's rule after a run of
  /// degenerate pivots.
  dantzig,
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  PivotRule rule = PivotRule::dantzig;
  std::size_t max_iterations = 1'000'000;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

LpSolution solve(const StandardFormLP& lp, const SimplexOptions& opts = {});

struct SolutionAudit {
  double max_violation = 0.0;  // rows and sign bounds
  double objective = 0.0;
};

/// Independent feasibility/objective evaluation of a point.
SolutionAudit verify_solution(const StandardFormLP& lp, const std::vector<double>& x);

/// Textual LP file (objective, "Subject To", "Bounds", "End"). Numbers are
/// written with 17 significant digits so a write/read cycle is exact.
std::string write_lp_file(const StandardFormLP& lp);
/// Reads the subset written by write_lp_file, plus ">=" and "=" rows and
/// "x >= 0" bounds. Throws ConfigError on malformed input.
StandardFormLP read_lp_file(std::string_view text);

}  // namespace mrbounds
