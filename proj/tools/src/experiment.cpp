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

#include "mrbounds_cli/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "mrbounds/bias.hpp"
#include "mrbounds/errors.hpp"
#include "mrbounds/model_file.hpp"

namespace mrbounds::cli {
namespace {

constexpr double kBalanceTol = 1e-12;
constexpr double kIdentityTol = 1e-10;
constexpr double kStationaryTol = 1e-12;
constexpr int kIdentityTrials = 100;
constexpr int kIdentityHorizon = 200;
constexpr int kDefaultAuditHorizon = 500;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

std::string grid_tag(const Grid& g) { return std::to_string(g.l1) + "x" + std::to_string(g.l2); }

bool is_tandem_family(std::string_view m) {
  return m == "tandem" || m == "tandem_slowdown" || m == "tandem_speedup" || m == "tandem_perturbed";
}

TandemParams tandem_params(const ExperimentConfig& cfg, const Grid& g) {
  TandemParams p;
  p.lambda = cfg.lambda;
  p.mu1 = cfg.mu1;
  p.mu2 = cfg.mu2;
  p.grid = g;
  if (cfg.model == "tandem_slowdown") {
    p.variant = TandemVariant::slowdown;
    p.mu2_variant = cfg.mu2_slow.value_or(0.5 * cfg.mu2);
  } else if (cfg.model == "tandem_speedup") {
    p.variant = TandemVariant::speedup;
    p.mu2_variant = cfg.mu2_fast.value_or(1.2 * cfg.mu2);
  }
  return p;
}

CoupledParams coupled_params(const ExperimentConfig& cfg, const Grid& g) {
  CoupledParams p;
  p.lambda1 = cfg.lambda;
  p.lambda2 = cfg.lambda2;
  p.mu1 = cfg.mu1;
  p.mu2 = cfg.mu2;
  p.mu1_sat = cfg.mu1_sat;
  p.mu2_sat = cfg.mu2_sat;
  p.grid = g;
  return p;
}

// Grids of a sweep, taking the grid of a model file when one is given.
std::vector<Grid> sweep_grids(const ExperimentConfig& cfg) {
  for (const std::string* path : {&cfg.model_file, &cfg.perturbed_file}) {
    if (!path->empty()) return {read_model_file(slurp(*path)).kernel.grid()};
  }
  return cfg.grids();
}

std::ostream& row_context(std::ostream& err, const Grid& g) {
  return err << "l1=" << g.l1 << ",l2=" << g.l2 << ": ";
}

nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t b = 0; b < kNumBlocks; ++b) {
    const auto block = static_cast<Block>(b);
    if (!cert.has_e && (block == Block::e1 || block == Block::e2)) continue;
    nlohmann::json comps = nlohmann::json::object();
    for (CComponent k : all_c_components()) {
      comps[std::to_string(k.value())] = {cert[block].coef(k, 0), cert[block].coef(k, 1),
                                          cert[block].coef(k, 2)};
    }
    out[block_name(block)] = comps;
  }
  out["objective"] = cert.objective;
  return out;
}

struct Check {
  std::string name;
  double value;
  double tol;
  std::string detail;
};

}  // namespace

std::vector<Grid> ExperimentConfig::grids() const {
  if (l1 || l2) return {Grid{l1.value_or(l2.value_or(0)), l2.value_or(l1.value_or(0))}};
  std::vector<Grid> out;
  for (int l = l_min; l <= l_max; ++l) out.push_back({l, l});
  return out;
}

void ExperimentConfig::check() const {
  bool known = false;
  for (std::string_view m : kModelNames) known = known || m == model;
  if (!known) throw ConfigError("unknown model '" + model + "'");
  measure_by_name(measure, Grid{kMinLpBuffer, kMinLpBuffer});
  if (!l1 && !l2 && l_min > l_max) throw ConfigError("l-min must not exceed l-max");
  if (audit_horizon < 0) throw ConfigError("audit horizon must be nonnegative");
}

ExperimentConfig config_from_json(std::string_view text) {
  using nlohmann::json;
  ExperimentConfig cfg;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : doc.items()) {
      if (key == "model") cfg.model = v.get<std::string>();
      else if (key == "measure") cfg.measure = v.get<std::string>();
      else if (key == "lambda") cfg.lambda = v.get<double>();
      else if (key == "mu1") cfg.mu1 = v.get<double>();
      else if (key == "mu2") cfg.mu2 = v.get<double>();
      else if (key == "mu2_slow") cfg.mu2_slow = v.get<double>();
      else if (key == "mu2_fast") cfg.mu2_fast = v.get<double>();
      else if (key == "lambda2") cfg.lambda2 = v.get<double>();
      else if (key == "mu1_sat") cfg.mu1_sat = v.get<double>();
      else if (key == "mu2_sat") cfg.mu2_sat = v.get<double>();
      else if (key == "l_min") cfg.l_min = v.get<int>();
      else if (key == "l_max") cfg.l_max = v.get<int>();
      else if (key == "l1") cfg.l1 = v.get<int>();
      else if (key == "l2") cfg.l2 = v.get<int>();
      else if (key == "oracle") cfg.oracle = v.get<bool>();
      else if (key == "audit_horizon") cfg.audit_horizon = v.get<int>();
      else if (key == "emit_lp") cfg.emit_lp = v.get<std::string>();
      else if (key == "emit_cert") cfg.emit_cert = v.get<std::string>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "model_file") cfg.model_file = v.get<std::string>();
      else if (key == "perturbed_file") cfg.perturbed_file = v.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

Instance build_instance(const ExperimentConfig& cfg, const Grid& g) {
  cfg.check();
  const bool tandem_like = is_tandem_family(cfg.model);

  TransitionKernel original(g);
  if (!cfg.model_file.empty()) {
    original = read_model_file(slurp(cfg.model_file)).kernel;
  } else if (cfg.model == "tandem_perturbed") {
    original = tandem_perturbed(tandem_params(cfg, g)).kernel;
  } else if (tandem_like) {
    original = tandem(tandem_params(cfg, g));
  } else {
    original = coupled(coupled_params(cfg, g));
  }

  std::optional<ProductFormWalk> perturbed;
  if (!cfg.perturbed_file.empty()) {
    ModelFile f = read_model_file(slurp(cfg.perturbed_file));
    if (!f.measure) throw ConfigError(cfg.perturbed_file + ": perturbed model needs a measure");
    perturbed = ProductFormWalk{std::move(f.kernel), *f.measure};
  } else if (tandem_like) {
    perturbed = tandem_perturbed(tandem_params(cfg, original.grid()));
  } else {
    perturbed = coupled_perturbed(coupled_params(cfg, original.grid()));
  }
  if (!(perturbed->kernel.grid() == original.grid())) {
    throw ConfigError("original and perturbed walks live on different grids");
  }
  return {std::move(original), std::move(*perturbed), measure_by_name(cfg.measure, original.grid())};
}

bool BoundRow::ok() const {
  if (!bounds.optimal()) return false;
  if (containment && !containment->pass) return false;
  if (audit && !(audit->worst() <= kAuditTol)) return false;
  return true;
}

BoundRow run_bound(const ExperimentConfig& cfg, const Grid& g) {
  const Instance inst = build_instance(cfg, g);
  const BoundsProblem p = make_problem(inst.original, inst.perturbed.kernel,
                                       inst.perturbed.measure, inst.reward);
  BoundRow row{inst.original.grid(), solve_bounds(p), std::nullopt, std::nullopt, std::nullopt};
  if (cfg.oracle) {
    row.exact = performance(inst.original, inst.reward);
    row.containment = containment(row.bounds, *row.exact);
  }
  if (cfg.audit_horizon > 0 && row.bounds.optimal()) {
    const CertificateAudit up = certificate_check(row.bounds.upper_cert, p, cfg.audit_horizon);
    const CertificateAudit lo = certificate_check(row.bounds.lower_cert, p, cfg.audit_horizon);
    row.audit = CertificateAudit{std::max(up.premise, lo.premise), std::max(up.bias, lo.bias)};
  }
  const std::string tag = grid_tag(row.grid);
  if (!cfg.emit_lp.empty()) {
    const std::filesystem::path dir(cfg.emit_lp);
    write_file(dir / (tag + "_upper.lp"), export_lp(assemble(p, BoundDirection::upper)));
    write_file(dir / (tag + "_lower.lp"), export_lp(assemble(p, BoundDirection::lower)));
  }
  if (!cfg.emit_cert.empty() && row.bounds.optimal()) {
    const nlohmann::json doc = {{"l1", row.grid.l1},
                                {"l2", row.grid.l2},
                                {"upper", certificate_json(row.bounds.upper_cert)},
                                {"lower", certificate_json(row.bounds.lower_cert)}};
    write_file(std::filesystem::path(cfg.emit_cert) / (tag + "_cert.json"), doc.dump(2) + "\n");
  }
  return row;
}

std::string format_row(const BoundRow& row) {
  std::string s = std::to_string(row.grid.l1) + "," + std::to_string(row.grid.l2) + "," +
                  fmt(row.bounds.lower) + "," + fmt(row.bounds.upper) + "," +
                  fmt(row.bounds.gap()) + ",";
  if (row.exact) s += fmt(*row.exact);
  s += ",";
  if (row.containment) s += row.containment->pass ? "true" : "false";
  return s;
}

int cmd_bound(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Grid> grids;
  try {
    cfg.check();
    grids = sweep_grids(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  out << kBoundHeader << "\n";
  int status = kExitOk;
  for (const Grid& g : grids) {
    BoundRow row;
    try {
      row = run_bound(cfg, g);
    } catch (const ConfigError& e) {
      row_context(err, g) << "error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const DomainError& e) {
      row_context(err, g) << "error: " << e.what() << "\n";
      return kExitFailure;
    }
    out << format_row(row) << "\n";
    if (!row.bounds.optimal()) {
      row_context(err, row.grid) << "LP " << to_string(row.bounds.upper_status) << " (upper), "
                                 << to_string(row.bounds.lower_status) << " (lower)\n";
    }
    if (row.containment && !row.containment->pass) {
      row_context(err, row.grid) << "exact value outside the bounds (margins "
                                 << fmt(row.containment->lower_margin) << ", "
                                 << fmt(row.containment->upper_margin) << ")\n";
    }
    if (row.audit && !(row.audit->worst() <= kAuditTol)) {
      row_context(err, row.grid) << "certificate audit violation " << fmt(row.audit->worst()) << "\n";
    }
    if (!row.ok()) status = kExitFailure;
  }
  return status;
}

int cmd_exact(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Grid> grids;
  try {
    cfg.check();
    grids = sweep_grids(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  out << "l1,l2,exact\n";
  for (const Grid& g : grids) {
    try {
      const Instance inst = build_instance(cfg, g);
      out << g.l1 << "," << g.l2 << "," << fmt(performance(inst.original, inst.reward)) << "\n";
    } catch (const ConfigError& e) {
      row_context(err, g) << "error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const DomainError& e) {
      row_context(err, g) << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Grid> grids;
  try {
    cfg.check();
    grids = sweep_grids(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  int status = kExitOk;
  for (const Grid& g : grids) {
    out << "grid " << g.l1 << "x" << g.l2 << "\n";
    std::optional<Instance> inst;
    try {
      inst = build_instance(cfg, g);
    } catch (const ConfigError& e) {
      row_context(err, g) << "error: " << e.what() << "\n";
      return kExitConfig;
    }
    std::vector<Check> checks;
    auto walk_check = [&](const char* name, const TransitionKernel& w) {
      const WalkDiagnostics d = validate(w);
      std::string detail;
      for (const auto& issue : d.issues) detail += (detail.empty() ? "" : "; ") + issue;
      checks.push_back({name, d.ok() ? 0.0 : 1.0, 0.0, detail});
    };
    walk_check("original walk valid", inst->original);
    walk_check("perturbed walk valid", inst->perturbed.kernel);

    const BalanceReport bal = balance_residual(inst->perturbed.kernel, inst->perturbed.measure);
    checks.push_back({"balance residual", bal.max_residual, kBalanceTol, "worst at " + to_string(bal.worst)});

    std::optional<BoundsProblem> p;
    try {
      const Perturbation q = perturbation(inst->original, inst->perturbed.kernel);
      std::string offsets;
      for (CComponent k : all_c_components()) {
        for (Offset u : neighbors(k)) {
          if (q.at(k, u) == 0.0) continue;
          offsets += (offsets.empty() ? "" : " ") + std::string("C") + std::to_string(k.value()) +
                     "[" + to_string(u) + "]=" + fmt(q.at(k, u));
        }
      }
      checks.push_back({"perturbation locality", 0.0, 0.0, offsets.empty() ? "q = 0" : offsets});
      p = make_problem(inst->original, inst->perturbed.kernel, inst->perturbed.measure, inst->reward);
    } catch (const ConfigError& e) {
      checks.push_back({"perturbation locality", 1.0, 0.0, e.what()});
    }

    try {
      const StationaryDistribution st = stationary(inst->perturbed.kernel);
      double worst = 0.0;
      for (int j = 0; j <= g.l2; ++j)
        for (int i = 0; i <= g.l1; ++i)
          worst = std::max(worst, std::abs(st({i, j}) - inst->perturbed.measure({i, j})));
      checks.push_back({"product form vs stationary", worst, kStationaryTol, ""});
    } catch (const DomainError& e) {
      checks.push_back({"product form vs stationary", 1.0, kStationaryTol, e.what()});
    }

    if (g.l1 >= kMinLpBuffer && g.l2 >= kMinLpBuffer) {
      const BiasCoefficients c(inst->original);
      checks.push_back({"bias identity (random)",
                        verify_identity_random(inst->original, c, kIdentityTrials), kIdentityTol,
                        std::to_string(kIdentityTrials) + " trials"});
      checks.push_back({"bias identity (iterates)",
                        verify_identity_iterates(inst->original, c, inst->reward, kIdentityHorizon),
                        kIdentityTol, "t <= " + std::to_string(kIdentityHorizon)});
    }

    std::string audit_note;
    if (p) {
      const BoundResult r = solve_bounds(*p);
      if (r.optimal()) {
        const int horizon = cfg.audit_horizon > 0 ? cfg.audit_horizon : kDefaultAuditHorizon;
        const double worst = std::max(certificate_check(r.upper_cert, *p, horizon).worst(),
                                      certificate_check(r.lower_cert, *p, horizon).worst());
        checks.push_back({"certificate audit", worst, kAuditTol, "t <= " + std::to_string(horizon)});
      } else {
        audit_note = "certificate audit: n/a (LP " + to_string(r.upper_status) + ")";
      }
    }

    for (const Check& c : checks) {
      const bool pass = c.value <= c.tol;
      if (!pass) status = kExitFailure;
      out << "  " << (pass ? "PASS " : "FAIL ") << c.name << ": " << fmt(c.value);
      if (!c.detail.empty()) out << " (" << c.detail << ")";
      out << "\n";
    }
    if (!audit_note.empty()) out << "  " << audit_note << "\n";
  }
  return status;
}

int cmd_model(const ExperimentConfig& cfg, bool perturbed, std::ostream& out, std::ostream& err) {
  try {
    cfg.check();
    const std::vector<Grid> grids = sweep_grids(cfg);
    Instance inst = build_instance(cfg, grids.front());
    ModelFile f{perturbed ? inst.perturbed.kernel : inst.original,
                perturbed ? cfg.model + "_perturbed" : cfg.model, std::nullopt};
    if (perturbed) f.measure = inst.perturbed.measure;
    out << write_model_file(f);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace mrbounds::cli
