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

#include "mrbounds/bounds_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "mrbounds/errors.hpp"

namespace mrbounds {

std::string block_name(Block b) {
  switch (b) {
    case Block::fbar: return "Fbar";
    case Block::g: return "G";
    case Block::a1: return "A1";
    case Block::a2: return "A2";
    case Block::b1: return "B1";
    case Block::b2: return "B2";
    case Block::e1: return "E1";
    case Block::e2: return "E2";
  }
  return "?";
}

BoundsProblem make_problem(const TransitionKernel& original, const TransitionKernel& perturbed,
                           const GeometricMeasure& measure, const CLinearFunction& reward) {
  const Grid& g = original.grid();
  require_grid(g, kMinLpBuffer);
  if (!(measure.grid == g)) throw ConfigError("measure and kernels live on different grids");
  Perturbation q = perturbation(original, perturbed);
  for (CComponent k : all_c_components()) {
    for (int s = 1; s <= 2; ++s) {
      for (Offset u : {unit(s), -unit(s)}) {
        if (q.at(k, u) != 0.0 && !in_neighbors(k, u)) {
          throw ConfigError("perturbation at C_" + std::to_string(k.value()) + " offset " +
                            to_string(u) + " references a bias term outside S");
        }
      }
    }
  }
  return {original, perturbed, measure, reward, std::move(q), BiasCoefficients(original)};
}

namespace {

// Affine expression in the LP columns plus a numeric constant.
class Expr {
 public:
  explicit Expr(const LinearProgram& lp) : lp_(lp) {}

  // scale * X(n) for the C-linear variable function X of block b on C_k.
  Expr& fn(Block b, CComponent k, State n, double scale) {
    if (scale == 0.0) return *this;
    const double mult[3] = {1.0, static_cast<double>(n.i), static_cast<double>(n.j)};
    for (int d = 0; d < 3; ++d) {
      const auto col = lp_.index(b, k, d);
      if (!col) throw InvariantError("block " + block_name(b) + " is not part of this program");
      if (mult[d] != 0.0) terms_[*col] += scale * mult[d];
    }
    return *this;
  }
  Expr& constant(double v) {
    constant_ += v;
    return *this;
  }

  // Row "expr <= 0".
  LpRow row(std::string origin) const {
    LpRow r;
    for (const auto& [col, v] : terms_)
      if (v != 0.0) r.terms.emplace_back(col, v);
    r.rhs = -constant_;
    r.origin = std::move(origin);
    return r;
  }

 private:
  const LinearProgram& lp_;
  std::map<std::size_t, double> terms_;
  double constant_ = 0.0;
};

bool is_corner_of(const Rect& r, State n) {
  return (n.i == r.i_lo || n.i == r.i_hi) && (n.j == r.j_lo || n.j == r.j_hi);
}

// One error term coef * D_s(base) of sum_u q_u D_u(n).
struct ErrorTerm {
  int s;
  State base;
  double coef;
};

std::vector<ErrorTerm> error_terms(const Perturbation& q, CComponent k, State n) {
  std::vector<ErrorTerm> out;
  for (int s = 1; s <= 2; ++s) {
    // D_{e_s}(n) = D_s(n) and D_{-e_s}(n) = -D_s(n - e_s).
    if (const double up = q.at(k, unit(s)); up != 0.0) out.push_back({s, n, up});
    if (const double down = q.at(k, -unit(s)); down != 0.0) out.push_back({s, n - unit(s), -down});
  }
  return out;
}

std::string where(ZComponent kz, State n) {
  return "Z" + std::to_string(kz.value()) + "@" + to_string(n);
}

}  // namespace

std::optional<std::size_t> LinearProgram::index(Block b, CComponent k, int coef) const {
  const int off = block_offset_[static_cast<std::size_t>(b)];
  if (off < 0) return std::nullopt;
  return static_cast<std::size_t>(off) + k.slot() * 3 + static_cast<std::size_t>(coef);
}

std::string LinearProgram::variable_name(std::size_t j) const {
  const VariableRef& v = vars_.at(j);
  return block_name(v.block) + "_k" + std::to_string(v.k.value()) + "_c" + std::to_string(v.coef);
}

StandardFormLP LinearProgram::to_standard_form() const {
  StandardFormLP sf(rows_.size(), vars_.size());
  sf.sense = sense_;
  sf.c = objective_;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    sf.free[j] = true;
    sf.var_names.push_back(variable_name(j));
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [col, v] : rows_[r].terms) sf.at(r, col) = v;
    sf.b[r] = rows_[r].rhs;
    sf.row_names.push_back("c" + std::to_string(r) + "_" + rows_[r].origin);
  }
  return sf;
}

LinearProgram assemble(const BoundsProblem& p, BoundDirection dir, ErrorTermEncoding enc) {
  const Grid& g = p.original.grid();
  require_grid(g, kMinLpBuffer);
  const bool with_e = enc == ErrorTermEncoding::existential;

  LinearProgram lp;
  lp.block_offset_.fill(-1);
  for (std::size_t b = 0; b < kNumBlocks; ++b) {
    const auto block = static_cast<Block>(b);
    if (!with_e && (block == Block::e1 || block == Block::e2)) continue;
    lp.block_offset_[b] = static_cast<int>(lp.vars_.size());
    for (CComponent k : all_c_components())
      for (int d = 0; d < 3; ++d) lp.vars_.push_back({block, k, d});
  }

  std::set<std::pair<std::vector<std::pair<std::size_t, double>>, double>> seen;
  auto add = [&](LpRow row) {
    if (row.terms.empty() && row.rhs >= 0.0) return;
    if (!seen.emplace(row.terms, row.rhs).second) return;
    lp.rows_.push_back(std::move(row));
  };

  const Block nonneg_blocks[] = {Block::fbar, Block::g, Block::a1, Block::a2, Block::b1, Block::b2};

  for (ZComponent kz : all_z_components()) {
    for (const State& n : corners(kz, g)) {
      const CComponent k = c_component(n, g);
      const double fn = p.reward.eval(k, n);
      const auto terms = error_terms(p.q, k, n);

      // |Fbar(n) - F(n) + sum_u q_u D_u(n)| <= G(n), both sides.
      Expr upper(lp), lower(lp);
      upper.fn(Block::fbar, k, n, 1.0).fn(Block::g, k, n, -1.0).constant(-fn);
      lower.fn(Block::fbar, k, n, -1.0).fn(Block::g, k, n, -1.0).constant(fn);
      if (!with_e) {
        for (const ErrorTerm& t : terms) {
          const CComponent kb = c_component(t.base, g);
          const double mag = std::abs(t.coef);
          upper.fn(t.coef > 0 ? b_block(t.s) : a_block(t.s), kb, t.base, mag);
          lower.fn(t.coef > 0 ? a_block(t.s) : b_block(t.s), kb, t.base, mag);
        }
      } else {
        for (int s = 1; s <= 2; ++s) {
          const Block e = s == 1 ? Block::e1 : Block::e2;
          const double up = p.q.at(k, unit(s)), down = p.q.at(k, -unit(s));
          if (up != 0.0) {
            upper.fn(e, k, n, up);
            lower.fn(e, k, n, -up);
          }
          if (down != 0.0) {
            const State base = n - unit(s);
            const CComponent kb = c_component(base, g);
            upper.fn(e, kb, base, down);
            lower.fn(e, kb, base, -down);
          }
          add(Expr(lp).fn(a_block(s), k, n, -1.0).fn(e, k, n, -1.0).row("Elo" + std::to_string(s) + "_" + where(kz, n)));
          add(Expr(lp).fn(e, k, n, 1.0).fn(b_block(s), k, n, -1.0).row("Eup" + std::to_string(s) + "_" + where(kz, n)));
        }
      }
      add(upper.row("premise_up_" + where(kz, n)));
      add(lower.row("premise_lo_" + where(kz, n)));

      // Uniform bias bounds by induction on t.
      for (int s = 1; s <= 2; ++s) {
        if (!p.bias.defined(s, kz)) continue;
        const CoefficientBlock& blk = p.bias.block(s, kz);
        const State ns = n + unit(s);
        const double df = p.reward(ns, g) - fn;
        Expr bfam(lp), afam(lp);
        bfam.constant(df).fn(b_block(s), k, n, -1.0);
        afam.constant(-df).fn(a_block(s), k, n, -1.0);
        for (int v = 1; v <= 2; ++v) {
          for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
            const double c = blk.c[static_cast<std::size_t>(v - 1)][slot];
            if (c == 0.0) continue;
            const State m = n + slot_offset(slot);
            const CComponent km = c_component(m, g);
            // max{-c A_v, c B_v} and max{-c B_v, c A_v} with A_v, B_v >= 0.
            bfam.fn(c > 0 ? b_block(v) : a_block(v), km, m, std::abs(c));
            afam.fn(c > 0 ? a_block(v) : b_block(v), km, m, std::abs(c));
          }
        }
        add(bfam.row("biasB" + std::to_string(s) + "_" + where(kz, n)));
        add(afam.row("biasA" + std::to_string(s) + "_" + where(kz, n)));
      }

      // Nonnegativity; a C-linear function is nonnegative on C_k iff it is
      // at the corners of C_k, which are among the Z-corners.
      if (is_corner_of(c_rect(k, g), n)) {
        for (Block b : nonneg_blocks)
          add(Expr(lp).fn(b, k, n, -1.0).row("nonneg_" + block_name(b) + "_" + where(kz, n)));
      }
    }
  }

  const ComponentWeights w = component_weights(p.measure);
  lp.objective_.assign(lp.vars_.size(), 0.0);
  const double g_sign = dir == BoundDirection::upper ? 1.0 : -1.0;
  for (CComponent k : all_c_components()) {
    for (int d = 0; d < 3; ++d) {
      const double wk = w[k.slot()][static_cast<std::size_t>(d)];
      lp.objective_[*lp.index(Block::fbar, k, d)] += wk;
      lp.objective_[*lp.index(Block::g, k, d)] += g_sign * wk;
    }
  }
  lp.sense_ = dir == BoundDirection::upper ? Sense::minimize : Sense::maximize;
  return lp;
}

Certificate certificate_from(const LinearProgram& lp, const std::vector<double>& x) {
  Certificate cert;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const VariableRef& v = lp.variables()[j];
    auto& f = cert.fn[static_cast<std::size_t>(v.block)];
    f = f.with(v.k, v.coef, x.at(j));
    if (v.block == Block::e1 || v.block == Block::e2) cert.has_e = true;
  }
  return cert;
}

BoundResult solve_bounds(const BoundsProblem& p, const BoundOptions& opts) {
  BoundResult res;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (BoundDirection dir : {BoundDirection::upper, BoundDirection::lower}) {
    const LinearProgram lp = assemble(p, dir, opts.encoding);
    const StandardFormLP sf = lp.to_standard_form();
    const LpSolution sol = solve(sf, opts.simplex);
    const bool up = dir == BoundDirection::upper;
    (up ? res.upper_status : res.lower_status) = sol.status;
    if (up) {
      res.num_variables = lp.num_variables();
      res.num_constraints = lp.num_constraints();
    }
    if (sol.status != LpStatus::optimal) {
      (up ? res.upper : res.lower) = nan;
      continue;
    }
    Certificate cert = certificate_from(lp, sol.x);
    cert.objective = sol.objective;
    (up ? res.upper : res.lower) = sol.objective;
    (up ? res.upper_lp_violation : res.lower_lp_violation) = verify_solution(sf, sol.x).max_violation;
    (up ? res.upper_cert : res.lower_cert) = std::move(cert);
  }
  return res;
}

CertificateAudit certificate_check(const Certificate& cert, const BoundsProblem& p, int horizon) {
  const Grid& g = p.original.grid();
  const auto n_states = static_cast<std::size_t>(g.num_states());
  std::vector<double> ft(n_states, 0.0), ft1(n_states, 0.0);
  CertificateAudit audit;
  for (int t = 0; t <= horizon; ++t) {
    for (int j = 0; j <= g.l2; ++j) {
      for (int i = 0; i <= g.l1; ++i) {
        const State n{i, j};
        const CComponent k = c_component(n, g);
        const double here = ft[state_index(g, n)];
        double err = 0.0;
        for (Offset u : neighbors(k)) err += p.q.at(k, u) * (ft[state_index(g, n + u)] - here);
        const double lhs = cert[Block::fbar].eval(k, n) - p.reward.eval(k, n) + err;
        audit.premise = std::max(audit.premise, std::abs(lhs) - cert[Block::g].eval(k, n));
        for (int s = 1; s <= 2; ++s) {
          const State ns = n + unit(s);
          if (!contains(g, ns)) continue;
          const double d = ft[state_index(g, ns)] - here;
          audit.bias = std::max(audit.bias, d - cert[b_block(s)].eval(k, n));
          audit.bias = std::max(audit.bias, -cert[a_block(s)].eval(k, n) - d);
        }
      }
    }
    if (t < horizon) {
      reward_step(p.original, p.reward, ft, ft1);
      ft.swap(ft1);
    }
  }
  return audit;
}

double corner_reduction_check(const Certificate& cert, const BoundsProblem& p) {
  const Grid& g = p.original.grid();
  auto at = [&](Block b, State n) { return cert[b](n, g); };
  double worst = 0.0;
  for (ZComponent kz : all_z_components()) {
    for (const State& n : states_of(kz, g)) {
      const CComponent k = c_component(n, g);
      const double fn = p.reward.eval(k, n);
      double hi = at(Block::fbar, n) - fn, lo = fn - at(Block::fbar, n);
      if (!cert.has_e) {
        for (const ErrorTerm& t : error_terms(p.q, k, n)) {
          const double a = at(a_block(t.s), t.base), b = at(b_block(t.s), t.base);
          hi += std::max(-t.coef * a, t.coef * b);
          lo += std::max(t.coef * a, -t.coef * b);
        }
      } else {
        for (int s = 1; s <= 2; ++s) {
          const Block e = s == 1 ? Block::e1 : Block::e2;
          const double term = p.q.at(k, unit(s)) * at(e, n) +
                              (p.q.at(k, -unit(s)) != 0.0
                                   ? p.q.at(k, -unit(s)) * at(e, n - unit(s))
                                   : 0.0);
          hi += term;
          lo -= term;
          worst = std::max(worst, -at(a_block(s), n) - at(e, n));
          worst = std::max(worst, at(e, n) - at(b_block(s), n));
        }
      }
      worst = std::max(worst, hi - at(Block::g, n));
      worst = std::max(worst, lo - at(Block::g, n));

      for (int s = 1; s <= 2; ++s) {
        if (!p.bias.defined(s, kz)) continue;
        const CoefficientBlock& blk = p.bias.block(s, kz);
        const double df = p.reward(n + unit(s), g) - fn;
        double bsum = df, asum = -df;
        for (int v = 1; v <= 2; ++v) {
          for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
            const double c = blk.c[static_cast<std::size_t>(v - 1)][slot];
            if (c == 0.0) continue;
            const State m = n + slot_offset(slot);
            const double a = at(a_block(v), m), b = at(b_block(v), m);
            bsum += std::max(-c * a, c * b);
            asum += std::max(-c * b, c * a);
          }
        }
        worst = std::max(worst, bsum - at(b_block(s), n));
        worst = std::max(worst, asum - at(a_block(s), n));
      }
      for (Block b : {Block::fbar, Block::g, Block::a1, Block::a2, Block::b1, Block::b2})
        worst = std::max(worst, -at(b, n));
    }
  }
  return worst;
}

double certificate_objective(const Certificate& cert, const GeometricMeasure& m, double sign) {
  const Grid& g = m.grid;
  double total = 0.0;
  for (int j = 0; j <= g.l2; ++j)
    for (int i = 0; i <= g.l1; ++i)
      total += (cert[Block::fbar]({i, j}, g) + sign * cert[Block::g]({i, j}, g)) * m({i, j});
  return total;
}

std::string export_lp(const LinearProgram& lp) { return write_lp_file(lp.to_standard_form()); }

}  // namespace mrbounds
