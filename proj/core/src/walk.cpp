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

#include "mrbounds/walk.hpp"

#include <cmath>
#include <deque>
#include <numeric>

#include "mrbounds/errors.hpp"

namespace mrbounds {
namespace {

// Slack allowed when a probability sum lands an ulp above 1.
constexpr double kSumSlack = 1e-12;

void check_jump(CComponent k, Offset u) {
  if (k.value() < 1 || k.value() > kNumCComponents) {
    throw DomainError("C-component index out of range: " + std::to_string(k.value()));
  }
  if (u == kStay) throw DomainError("self-loop probabilities are implicit");
  if (!in_neighbors(k, u)) {
    throw DomainError("offset " + to_string(u) + " leaves S from C_" + std::to_string(k.value()));
  }
}

double row_sum(const std::array<double, kNumOffsets>& row) {
  double s = 0.0;
  for (std::size_t slot = 0; slot < kNumOffsets; ++slot)
    if (slot != offset_slot(kStay)) s += row[slot];
  return s;
}

std::vector<std::size_t> reach(const Grid& g, const TransitionKernel& w, bool forward) {
  const auto n_states = static_cast<std::size_t>(g.num_states());
  std::vector<std::size_t> order;
  std::vector<bool> seen(n_states, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    order.push_back(cur);
    const State n = index_state(g, cur);
    for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
      const Offset u = slot_offset(slot);
      const State m = n + u;
      if (!contains(g, m)) continue;
      const double p = forward ? w.transition_prob(n, u) : w.transition_prob(m, -u);
      if (p <= 0.0) continue;
      const std::size_t idx = state_index(g, m);
      if (!seen[idx]) {
        seen[idx] = true;
        queue.push_back(idx);
      }
    }
  }
  return order;
}

}  // namespace

TransitionKernel::TransitionKernel(Grid grid) : grid_(grid) {
  require_grid(grid_, 1);
}

TransitionKernel TransitionKernel::with(CComponent k, Offset u, double p) const {
  check_jump(k, u);
  TransitionKernel out = *this;
  out.jumps_[k.slot()][offset_slot(u)] = p;
  return out;
}

double TransitionKernel::prob(CComponent k, Offset u) const {
  if (!in_neighbors(k, u)) return 0.0;
  if (u == kStay) return 1.0 - jump_mass(k);
  return jumps_[k.slot()][offset_slot(u)];
}

double TransitionKernel::jump_mass(CComponent k) const { return row_sum(jumps_[k.slot()]); }

double TransitionKernel::transition_prob(State n, Offset u) const {
  return prob(c_component(n, grid_), u);
}

CtmcRates CtmcRates::with(CComponent k, Offset u, double rate) const {
  check_jump(k, u);
  if (!(rate >= 0.0)) throw DomainError("rates must be nonnegative");
  CtmcRates out = *this;
  out.rates_[k.slot()][offset_slot(u)] = rate;
  return out;
}

double CtmcRates::rate(CComponent k, Offset u) const {
  if (u == kStay || !in_neighbors(k, u)) return 0.0;
  return rates_[k.slot()][offset_slot(u)];
}

double CtmcRates::outflow(CComponent k) const { return row_sum(rates_[k.slot()]); }

double CtmcRates::max_outflow() const {
  double m = 0.0;
  for (CComponent k : all_c_components()) m = std::max(m, outflow(k));
  return m;
}

TransitionKernel uniformize(const CtmcRates& rates) {
  TransitionKernel w(rates.grid());
  for (CComponent k : all_c_components()) {
    if (rates.outflow(k) > 1.0 + kSumSlack) {
      throw NormalizationError("outflow of C_" + std::to_string(k.value()) +
                               " exceeds the uniformization parameter 1; rescale all rates");
    }
    for (Offset u : neighbors(k)) {
      if (u == kStay) continue;
      const double r = rates.rate(k, u);
      if (r != 0.0) w = w.with(k, u, r);
    }
  }
  return w;
}

CtmcRates rescale(const CtmcRates& rates, double lambda) {
  if (!(lambda > 0.0) || lambda < rates.max_outflow()) {
    throw NormalizationError("rescale factor must dominate every component outflow");
  }
  CtmcRates out(rates.grid());
  for (CComponent k : all_c_components())
    for (Offset u : neighbors(k))
      if (u != kStay && rates.rate(k, u) != 0.0) out = out.with(k, u, rates.rate(k, u) / lambda);
  return out;
}

WalkDiagnostics validate(const TransitionKernel& w) {
  WalkDiagnostics d;
  const Grid& g = w.grid();
  for (CComponent k : all_c_components()) {
    const auto& row = w.jumps()[k.slot()];
    for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
      const Offset u = slot_offset(slot);
      if (u == kStay) continue;
      if (!in_neighbors(k, u) && row[slot] != 0.0) {
        d.confined = false;
        d.issues.push_back("C_" + std::to_string(k.value()) + " has mass at " + to_string(u) +
                           " which leaves S");
      }
      if (row[slot] < 0.0 || !std::isfinite(row[slot])) {
        d.stochastic = false;
        d.issues.push_back("C_" + std::to_string(k.value()) + " has invalid probability at " +
                           to_string(u));
      }
    }
    const double mass = w.jump_mass(k);
    if (mass > 1.0 + kSumSlack) {
      d.stochastic = false;
      d.issues.push_back("C_" + std::to_string(k.value()) + " jump mass " +
                         std::to_string(mass) + " exceeds 1");
    }
  }

  const auto n_states = static_cast<std::size_t>(g.num_states());
  const auto fwd = reach(g, w, true);
  const auto bwd = reach(g, w, false);
  d.irreducible = fwd.size() == n_states && bwd.size() == n_states;
  if (!d.irreducible) {
    d.issues.push_back("chain is reducible: " + std::to_string(fwd.size()) + " of " +
                       std::to_string(n_states) + " states reachable from (0,0)");
    return d;
  }

  // Period = gcd over edges (a -> b) of level(a) + 1 - level(b), with levels
  // the BFS distances from state 0.
  std::vector<int> level(n_states, -1);
  std::deque<std::size_t> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    const State n = index_state(g, cur);
    for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
      const State m = n + slot_offset(slot);
      if (!contains(g, m) || w.transition_prob(n, slot_offset(slot)) <= 0.0) continue;
      const std::size_t idx = state_index(g, m);
      if (level[idx] < 0) {
        level[idx] = level[cur] + 1;
        queue.push_back(idx);
      }
    }
  }
  int period = 0;
  for (std::size_t a = 0; a < n_states; ++a) {
    const State n = index_state(g, a);
    for (std::size_t slot = 0; slot < kNumOffsets; ++slot) {
      const State m = n + slot_offset(slot);
      if (!contains(g, m) || w.transition_prob(n, slot_offset(slot)) <= 0.0) continue;
      period = std::gcd(period, std::abs(level[a] + 1 - level[state_index(g, m)]));
    }
  }
  d.period = period;
  d.aperiodic = period == 1;
  if (!d.aperiodic) d.issues.push_back("chain has period " + std::to_string(period));
  return d;
}

}  // namespace mrbounds
