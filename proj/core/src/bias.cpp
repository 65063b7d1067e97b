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

#include "mrbounds/bias.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "mrbounds/errors.hpp"

namespace mrbounds {
namespace {

constexpr double kMassEps = 1e-15;
constexpr double kResidualTol = 1e-12;

struct CoupledPair {
  Offset target;  // endpoint reached from n + e_s, relative to n
  Offset source;  // endpoint reached from n, relative to n
  double mass;
};

int& coord(Offset& u, int axis) { return axis == 1 ? u.du : u.dv; }
int coord(const Offset& u, int axis) { return axis == 1 ? u.du : u.dv; }

void check_base(Offset base) {
  if (base.du < -1 || base.du > 1 || base.dv < -1 || base.dv > 1) {
    throw InvariantError("bias path left the one-step neighborhood at " + to_string(base));
  }
}

// Telescopes F(to) - F(from) along `axis` and records the unit differences.
void walk_axis(CoefficientBlock& out, Offset& pos, int axis, int to, double mass) {
  auto& row = out.c[static_cast<std::size_t>(axis - 1)];
  while (coord(pos, axis) < to) {
    check_base(pos);
    row[offset_slot(pos)] += mass;
    ++coord(pos, axis);
  }
  while (coord(pos, axis) > to) {
    --coord(pos, axis);
    check_base(pos);
    row[offset_slot(pos)] -= mass;
  }
}

std::array<double, kNumOffsets> next_state_distribution(const TransitionKernel& w, CComponent k) {
  std::array<double, kNumOffsets> p{};
  for (Offset u : neighbors(k)) {
    const double v = w.prob(k, u);
    if (v < -kMassEps || !std::isfinite(v)) {
      throw InvariantError("kernel is not stochastic at C_" + std::to_string(k.value()));
    }
    p[offset_slot(u)] = std::max(v, 0.0);
  }
  return p;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool bias_defined(int s, ZComponent k, const Grid& g) {
  require_grid(g, kMinLpBuffer);
  if (s == 1) return k.x_class() != 4;
  if (s == 2) return k.y_class() != 4;
  throw DomainError("direction must be 1 or 2");
}

CoefficientBlock derive_coefficients(const TransitionKernel& w, int s, ZComponent k) {
  const Grid& g = w.grid();
  if (!bias_defined(s, k, g)) {
    throw DomainError("D_" + std::to_string(s) + " is undefined on Z_" + std::to_string(k.value()));
  }
  const Offset es = unit(s);
  const CComponent from_source = z_source_c(k, g);
  const CComponent from_target = z_target_c(k, es, g);
  auto src = next_state_distribution(w, from_source);
  auto tgt = next_state_distribution(w, from_target);

  std::vector<CoupledPair> pairs;
  // Equal jumps first: endpoints differ by exactly e_s.
  for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
    const double m = std::min(src[slot], tgt[slot]);
    if (m <= 0.0) continue;
    const Offset u = slot_offset(slot);
    pairs.push_back({{u.du + es.du, u.dv + es.dv}, u, m});
    src[slot] -= m;
    tgt[slot] -= m;
  }
  // Leftover mass in lexicographic offset order.
  std::size_t a = 0, b = 0;
  while (true) {
    while (a < kNumOffsets && src[a] <= kMassEps) ++a;
    while (b < kNumOffsets && tgt[b] <= kMassEps) ++b;
    if (a == kNumOffsets || b == kNumOffsets) break;
    const double m = std::min(src[a], tgt[b]);
    const Offset us = slot_offset(a), ut = slot_offset(b);
    pairs.push_back({{ut.du + es.du, ut.dv + es.dv}, us, m});
    src[a] -= m;
    tgt[b] -= m;
  }
  double left_src = 0.0, left_tgt = 0.0;
  for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
    left_src += src[slot];
    left_tgt += tgt[slot];
  }
  if (std::abs(left_src) > kResidualTol || std::abs(left_tgt) > kResidualTol) {
    throw InvariantError("coupling left unmatched mass; kernel rows do not sum to one");
  }

  // Paths move along the axis orthogonal to e_s first, then along e_s; this
  // keeps every unit step based inside {-1,0,1}^2.
  const int other = 3 - s;
  CoefficientBlock out;
  for (const CoupledPair& p : pairs) {
    out.coupled_mass += p.mass;
    if (p.target == p.source) continue;
    out.moved_mass += p.mass;
    Offset pos = p.source;
    walk_axis(out, pos, other, coord(p.target, other), p.mass);
    walk_axis(out, pos, s, coord(p.target, s), p.mass);
  }
  return out;
}

BiasCoefficients::BiasCoefficients(const TransitionKernel& w) : grid_(w.grid()) {
  require_grid(grid_, kMinLpBuffer);
  for (int s = 1; s <= 2; ++s) {
    for (ZComponent k : all_z_components()) {
      defined_[idx(s)][k.slot()] = bias_defined(s, k, grid_);
      if (defined_[idx(s)][k.slot()]) blocks_[idx(s)][k.slot()] = derive_coefficients(w, s, k);
    }
  }
}

std::string BiasCoefficients::to_csv() const {
  std::string out = "s,k,v,du,dv,c\n";
  for (int s = 1; s <= 2; ++s) {
    for (ZComponent k : all_z_components()) {
      if (!defined(s, k)) continue;
      for (int v = 1; v <= 2; ++v) {
        for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
          const Offset u = slot_offset(slot);
          const double c = at(s, k, v, u);
          if (c == 0.0) continue;
          out += std::to_string(s) + "," + std::to_string(k.value()) + "," + std::to_string(v) +
                 "," + std::to_string(u.du) + "," + std::to_string(u.dv) + "," +
                 format_double(c) + "\n";
        }
      }
    }
  }
  return out;
}

RewardTable::RewardTable(Grid grid, int horizon) : grid_(grid), horizon_(horizon) {
  if (horizon < 0) throw DomainError("horizon must be nonnegative");
  values_.assign(static_cast<std::size_t>(horizon) + 1,
                 std::vector<double>(static_cast<std::size_t>(grid.num_states()), 0.0));
}

void reward_step(const TransitionKernel& w, const CLinearFunction& reward,
                 const std::vector<double>& current, std::vector<double>& next) {
  const Grid& g = w.grid();
  for (int j = 0; j <= g.l2; ++j) {
    for (int i = 0; i <= g.l1; ++i) {
      const State n{i, j};
      const CComponent k = c_component(n, g);
      double v = reward.eval(k, n);
      for (Offset u : neighbors(k)) v += w.prob(k, u) * current[state_index(g, n + u)];
      next[state_index(g, n)] = v;
    }
  }
}

RewardTable reward_iterate(const TransitionKernel& w, const CLinearFunction& reward, int horizon) {
  RewardTable table(w.grid(), horizon);
  for (int t = 0; t < horizon; ++t) {
    reward_step(w, reward, table.values_[static_cast<std::size_t>(t)],
                table.values_[static_cast<std::size_t>(t) + 1]);
  }
  return table;
}

namespace {

// Largest discrepancy of the expansion for one layer pair (F^t -> F^{t+1}).
double identity_residual(const TransitionKernel& w, const BiasCoefficients& c,
                         const CLinearFunction& reward, const std::vector<double>& ft,
                         const std::vector<double>& ft1) {
  const Grid& g = w.grid();
  auto val = [&](State n) { return ft[state_index(g, n)]; };
  double worst = 0.0;
  for (int s = 1; s <= 2; ++s) {
    for (ZComponent k : all_z_components()) {
      if (!c.defined(s, k)) continue;
      const CoefficientBlock& blk = c.block(s, k);
      for (const State& n : states_of(k, g)) {
        const State ns = n + unit(s);
        const double lhs = ft1[state_index(g, ns)] - ft1[state_index(g, n)];
        double rhs = reward(ns, g) - reward(n, g);
        for (int v = 1; v <= 2; ++v) {
          for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
            const double coef = blk.c[static_cast<std::size_t>(v - 1)][slot];
            if (coef == 0.0) continue;
            const State base = n + slot_offset(slot);
            rhs += coef * (val(base + unit(v)) - val(base));
          }
        }
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst;
}

}  // namespace

double verify_identity_random(const TransitionKernel& w, const BiasCoefficients& c, int trials,
                              std::uint64_t seed) {
  const Grid& g = w.grid();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  const auto n_states = static_cast<std::size_t>(g.num_states());
  double worst = 0.0;
  std::vector<double> ft(n_states), ft1(n_states);
  for (int trial = 0; trial < trials; ++trial) {
    for (double& v : ft) v = draw(rng);
    CLinearFunction::Coefficients coeffs{};
    for (auto& row : coeffs)
      for (double& v : row) v = draw(rng);
    const CLinearFunction reward(coeffs);
    reward_step(w, reward, ft, ft1);
    worst = std::max(worst, identity_residual(w, c, reward, ft, ft1));
  }
  return worst;
}

double verify_identity_iterates(const TransitionKernel& w, const BiasCoefficients& c,
                                const CLinearFunction& reward, int horizon) {
  const auto n_states = static_cast<std::size_t>(w.grid().num_states());
  std::vector<double> ft(n_states, 0.0), ft1(n_states);
  double worst = 0.0;
  for (int t = 0; t < horizon; ++t) {
    reward_step(w, reward, ft, ft1);
    worst = std::max(worst, identity_residual(w, c, reward, ft, ft1));
    ft.swap(ft1);
  }
  return worst;
}

}  // namespace mrbounds
