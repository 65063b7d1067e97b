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

// Experiment runner behind the mrbounds command-line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrbounds/bounds_lp.hpp"
#include "mrbounds/models.hpp"
#include "mrbounds/oracle.hpp"

namespace mrbounds::cli {

struct ExperimentConfig {
  std::string model = "tandem";
  std::string measure = "blocking";

  double lambda = 0.1;
  double mu1 = 0.2;
  double mu2 = 0.2;
  std::optional<double> mu2_slow;  // default 0.5 * mu2
  std::optional<double> mu2_fast;  // default 1.2 * mu2
  double lambda2 = 0.1;
  double mu1_sat = 0.4;
  double mu2_sat = 0.3;

  int l_min = 5;
  int l_max = 5;
  std::optional<int> l1;
  std::optional<int> l2;

  bool oracle = false;
  int audit_horizon = 0;  // 0 disables the certificate audit
  std::string emit_lp;    // directory, empty to disable
  std::string emit_cert;  // directory, empty to disable
  std::string out;        // empty for stdout

  std::string model_file;      // original kernel from a model file
  std::string perturbed_file;  // perturbed kernel + measure from a model file

  /// Grids of the sweep: (l1, l2) if either is given, else L1 = L2 over
  /// [l_min, l_max].
  std::vector<Grid> grids() const;

  /// Throws ConfigError.
  void check() const;
};

/// Reads a JSON object whose keys are the flag names with '-' replaced by
/// '_' (e.g. "l_min", "mu2_slow"). Unknown keys are rejected.
ExperimentConfig config_from_json(std::string_view text);

inline constexpr std::string_view kModelNames[] = {"tandem", "tandem_slowdown", "tandem_speedup",
                                                   "coupled", "tandem_perturbed"};

/// Original walk, perturbed walk and reward of one grid.
struct Instance {
  TransitionKernel original;
  ProductFormWalk perturbed;
  CLinearFunction reward;
};

/// Throws ConfigError for unknown names or invalid parameters.
Instance build_instance(const ExperimentConfig& cfg, const Grid& g);

struct BoundRow {
  Grid grid;
  BoundResult bounds;
  std::optional<double> exact;
  std::optional<Containment> containment;
  std::optional<CertificateAudit> audit;

  /// Feasible, contained (when checked) and audited within tolerance.
  bool ok() const;
};

inline constexpr double kAuditTol = 1e-8;

BoundRow run_bound(const ExperimentConfig& cfg, const Grid& g);

inline constexpr std::string_view kBoundHeader = "l1,l2,lower,upper,gap,exact,contained";
std::string format_row(const BoundRow& row);

/// Exit codes shared by all commands.
enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitConfig = 2 };

int cmd_bound(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_exact(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
/// Writes the original (or, with `perturbed`, the perturbed) walk of the
/// first grid as a model file.
int cmd_model(const ExperimentConfig& cfg, bool perturbed, std::ostream& out, std::ostream& err);

}  // namespace mrbounds::cli
