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

// Geometry of the rectangle S = {0..L1} x {0..L2}: the 9-way C-partition on
// which transition probabilities are homogeneous, and its 25-way refinement
// (the Z-partition) on which every one-step neighbor lands in a fixed
// C-component.

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace mrbounds {

/// Smallest buffer size for which all 25 Z-components are nonempty.
inline constexpr int kMinLpBuffer = 4;
/// Smallest buffer size for which all 9 C-components are nonempty.
inline constexpr int kMinBuffer = 2;

inline constexpr int kNumCComponents = 9;
inline constexpr int kNumZComponents = 25;
inline constexpr int kNumOffsets = 9;

struct Grid {
  int l1 = 0;
  int l2 = 0;

  int num_states() const { return (l1 + 1) * (l2 + 1); }
  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Throws ConfigError unless both buffer sizes are at least `min_buffer`.
void require_grid(const Grid& g, int min_buffer);

struct State {
  int i = 0;
  int j = 0;

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State&, const State&) = default;
};

/// A jump (du, dv). Transitions use du, dv in {-1, 0, 1}.
struct Offset {
  int du = 0;
  int dv = 0;

  friend bool operator==(const Offset&, const Offset&) = default;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

inline State operator+(State n, Offset u) { return {n.i + u.du, n.j + u.dv}; }
inline State operator-(State n, Offset u) { return {n.i - u.du, n.j - u.dv}; }
inline Offset operator-(Offset u) { return {-u.du, -u.dv}; }

inline constexpr Offset kStay{0, 0};
/// Unit direction e_s for s in {1, 2}.
inline constexpr Offset unit(int s) { return s == 1 ? Offset{1, 0} : Offset{0, 1}; }

/// Dense slot of an offset in {-1,0,1}^2, in lexicographic (du, dv) order.
inline constexpr std::size_t offset_slot(Offset u) {
  return static_cast<std::size_t>((u.du + 1) * 3 + (u.dv + 1));
}
inline constexpr Offset slot_offset(std::size_t slot) {
  return {static_cast<int>(slot) / 3 - 1, static_cast<int>(slot) % 3 - 1};
}
inline constexpr bool is_unit_step(Offset u) {
  return (u.du == 0) != (u.dv == 0) && u.du >= -1 && u.du <= 1 && u.dv >= -1 && u.dv <= 1;
}

/// Index k in 1..9 of a C-component. C_1..C_4 are the bottom, left, top and
/// right edges without corners, C_5..C_8 the corners (0,0), (0,L2), (L1,L2),
/// (L1,0), and C_9 the interior.
class CComponent {
 public:
  constexpr explicit CComponent(int k) : k_(k) {}
  constexpr int value() const { return k_; }
  constexpr std::size_t slot() const { return static_cast<std::size_t>(k_ - 1); }
  friend constexpr bool operator==(CComponent, CComponent) = default;
  friend constexpr auto operator<=>(CComponent, CComponent) = default;

 private:
  int k_;
};

/// Index k in 1..25 of a Z-component. The Z-partition is the product of the
/// axis classes {0}, {1}, {2..L-2}, {L-1}, {L}; components are numbered
/// row-major starting from the bottom row, so Z_1..Z_5 are the five pieces of
/// the line j = 0 from left to right.
class ZComponent {
 public:
  constexpr explicit ZComponent(int k) : k_(k) {}
  constexpr int value() const { return k_; }
  constexpr std::size_t slot() const { return static_cast<std::size_t>(k_ - 1); }
  constexpr int x_class() const { return (k_ - 1) % 5; }
  constexpr int y_class() const { return (k_ - 1) / 5; }
  friend constexpr bool operator==(ZComponent, ZComponent) = default;
  friend constexpr auto operator<=>(ZComponent, ZComponent) = default;

 private:
  int k_;
};

std::array<CComponent, kNumCComponents> all_c_components();
std::array<ZComponent, kNumZComponents> all_z_components();

bool contains(const Grid& g, State n);

/// Row-major index of a state, i fastest.
inline std::size_t state_index(const Grid& g, State n) {
  return static_cast<std::size_t>(n.j) * static_cast<std::size_t>(g.l1 + 1) +
         static_cast<std::size_t>(n.i);
}
inline State index_state(const Grid& g, std::size_t idx) {
  const auto w = static_cast<std::size_t>(g.l1 + 1);
  return {static_cast<int>(idx % w), static_cast<int>(idx / w)};
}

CComponent c_component(State n, const Grid& g);
ZComponent z_component(State n, const Grid& g);

/// N_k: offsets that keep every state of C_k inside S (self-loop included).
std::vector<Offset> neighbors(CComponent k);
bool in_neighbors(CComponent k, Offset u);

/// N^z_k, the offsets u with n + u in S for all n in Z_k.
std::vector<Offset> z_neighbors(ZComponent k, const Grid& g);

/// C-component of n + u for any n in Z_k.
CComponent z_target_c(ZComponent k, Offset u, const Grid& g);

/// C-component shared by all states of Z_k.
CComponent z_source_c(ZComponent k, const Grid& g);

struct Rect {
  int i_lo, i_hi, j_lo, j_hi;
};
Rect z_rect(ZComponent k, const Grid& g);
Rect c_rect(CComponent k, const Grid& g);

/// Extreme points of Z_k, deduplicated (1, 2 or 4 states).
std::vector<State> corners(ZComponent k, const Grid& g);

/// Every state of Z_k.
std::vector<State> states_of(ZComponent k, const Grid& g);

std::string to_string(State n);
std::string to_string(Offset u);

}  // namespace mrbounds
