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

#include "mrbounds/state_space.hpp"

#include <algorithm>
#include <utility>

#include "mrbounds/errors.hpp"

namespace mrbounds {
namespace {

int axis_class(int x, int l) {
  if (x == 0) return 0;
  if (x == l) return 4;
  if (x == 1) return 1;
  if (x == l - 1) return 3;
  return 2;
}

std::pair<int, int> axis_range(int cls, int l) {
  switch (cls) {
    case 0: return {0, 0};
    case 1: return {1, 1};
    case 2: return {2, l - 2};
    case 3: return {l - 1, l - 1};
    default: return {l, l};
  }
}

// Jump range along one axis for a class on that axis: low boundary, high
// boundary or neither.
std::vector<int> axis_steps(bool at_low, bool at_high) {
  std::vector<int> out;
  for (int d = -1; d <= 1; ++d) {
    if (at_low && d < 0) continue;
    if (at_high && d > 0) continue;
    out.push_back(d);
  }
  return out;
}

bool c_left(int k) { return k == 2 || k == 5 || k == 6; }
bool c_right(int k) { return k == 4 || k == 7 || k == 8; }
bool c_bottom(int k) { return k == 1 || k == 5 || k == 8; }
bool c_top(int k) { return k == 3 || k == 6 || k == 7; }

std::vector<Offset> product(const std::vector<int>& xs, const std::vector<int>& ys) {
  std::vector<Offset> out;
  for (int du : xs)
    for (int dv : ys) out.push_back({du, dv});
  return out;
}

template <typename T, std::size_t... I>
constexpr std::array<T, sizeof...(I)> numbered(std::index_sequence<I...>) {
  return {T(static_cast<int>(I) + 1)...};
}

}  // namespace

void require_grid(const Grid& g, int min_buffer) {
  if (g.l1 < min_buffer || g.l2 < min_buffer) {
    throw ConfigError("grid " + std::to_string(g.l1) + "x" + std::to_string(g.l2) +
                      " too small: need L1, L2 >= " + std::to_string(min_buffer));
  }
}

std::array<CComponent, kNumCComponents> all_c_components() {
  return numbered<CComponent>(std::make_index_sequence<kNumCComponents>{});
}

std::array<ZComponent, kNumZComponents> all_z_components() {
  return numbered<ZComponent>(std::make_index_sequence<kNumZComponents>{});
}

bool contains(const Grid& g, State n) {
  return n.i >= 0 && n.i <= g.l1 && n.j >= 0 && n.j <= g.l2;
}

CComponent c_component(State n, const Grid& g) {
  if (!contains(g, n)) throw DomainError("state " + to_string(n) + " outside S");
  const bool left = n.i == 0, right = n.i == g.l1;
  const bool bottom = n.j == 0, top = n.j == g.l2;
  if (bottom && left) return CComponent(5);
  if (top && left) return CComponent(6);
  if (top && right) return CComponent(7);
  if (bottom && right) return CComponent(8);
  if (bottom) return CComponent(1);
  if (left) return CComponent(2);
  if (top) return CComponent(3);
  if (right) return CComponent(4);
  return CComponent(9);
}

ZComponent z_component(State n, const Grid& g) {
  require_grid(g, kMinLpBuffer);
  if (!contains(g, n)) throw DomainError("state " + to_string(n) + " outside S");
  return ZComponent(axis_class(n.j, g.l2) * 5 + axis_class(n.i, g.l1) + 1);
}

std::vector<Offset> neighbors(CComponent k) {
  const int v = k.value();
  if (v < 1 || v > kNumCComponents) throw DomainError("C-component index out of range");
  return product(axis_steps(c_left(v), c_right(v)), axis_steps(c_bottom(v), c_top(v)));
}

bool in_neighbors(CComponent k, Offset u) {
  const int v = k.value();
  if (u.du < -1 || u.du > 1 || u.dv < -1 || u.dv > 1) return false;
  if (c_left(v) && u.du < 0) return false;
  if (c_right(v) && u.du > 0) return false;
  if (c_bottom(v) && u.dv < 0) return false;
  if (c_top(v) && u.dv > 0) return false;
  return true;
}

std::vector<Offset> z_neighbors(ZComponent k, const Grid& g) {
  require_grid(g, kMinLpBuffer);
  const int xc = k.x_class(), yc = k.y_class();
  return product(axis_steps(xc == 0, xc == 4), axis_steps(yc == 0, yc == 4));
}

Rect z_rect(ZComponent k, const Grid& g) {
  require_grid(g, kMinLpBuffer);
  const auto [ilo, ihi] = axis_range(k.x_class(), g.l1);
  const auto [jlo, jhi] = axis_range(k.y_class(), g.l2);
  return {ilo, ihi, jlo, jhi};
}

Rect c_rect(CComponent k, const Grid& g) {
  const int v = k.value();
  Rect r{1, g.l1 - 1, 1, g.l2 - 1};
  if (c_left(v)) r.i_lo = r.i_hi = 0;
  if (c_right(v)) r.i_lo = r.i_hi = g.l1;
  if (c_bottom(v)) r.j_lo = r.j_hi = 0;
  if (c_top(v)) r.j_lo = r.j_hi = g.l2;
  return r;
}

CComponent z_source_c(ZComponent k, const Grid& g) {
  const Rect r = z_rect(k, g);
  return c_component({r.i_lo, r.j_lo}, g);
}

CComponent z_target_c(ZComponent k, Offset u, const Grid& g) {
  const Rect r = z_rect(k, g);
  const State n{r.i_lo, r.j_lo};
  const auto nz = z_neighbors(k, g);
  if (std::find(nz.begin(), nz.end(), u) == nz.end()) {
    throw DomainError("offset " + to_string(u) + " not in N^z of Z_" + std::to_string(k.value()));
  }
  return c_component(n + u, g);
}

std::vector<State> corners(ZComponent k, const Grid& g) {
  const Rect r = z_rect(k, g);
  std::vector<State> out{{r.i_lo, r.j_lo}, {r.i_hi, r.j_lo}, {r.i_lo, r.j_hi}, {r.i_hi, r.j_hi}};
  std::vector<State> dedup;
  for (const State& s : out)
    if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(s);
  return dedup;
}

std::vector<State> states_of(ZComponent k, const Grid& g) {
  const Rect r = z_rect(k, g);
  std::vector<State> out;
  for (int j = r.j_lo; j <= r.j_hi; ++j)
    for (int i = r.i_lo; i <= r.i_hi; ++i) out.push_back({i, j});
  return out;
}

std::string to_string(State n) {
  return "(" + std::to_string(n.i) + "," + std::to_string(n.j) + ")";
}

std::string to_string(Offset u) {
  return std::to_string(u.du) + "," + std::to_string(u.dv);
}

}  // namespace mrbounds
