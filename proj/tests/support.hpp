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

// Shared fixtures and brute-force reference computations for the test suites.
// The references deliberately avoid the library's own solvers.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mrbounds/models.hpp"
#include "mrbounds/product_form.hpp"
#include "mrbounds/walk.hpp"

namespace mrbounds::testing {

enum class Example { tandem, slowdown, speedup, coupled };

inline const Example kExamples[] = {Example::tandem, Example::slowdown, Example::speedup,
                                    Example::coupled};

inline std::string example_name(Example e) {
  switch (e) {
    case Example::tandem: return "tandem";
    case Example::slowdown: return "slowdown";
    case Example::speedup: return "speedup";
    case Example::coupled: return "coupled";
  }
  return "?";
}

inline TandemParams tandem_params(Example e, int l) {
  TandemParams p{0.1, 0.2, 0.2, Grid{l, l}, TandemVariant::plain, 0.0};
  if (e == Example::slowdown) {
    p.variant = TandemVariant::slowdown;
    p.mu2_variant = 0.5 * p.mu2;
  } else if (e == Example::speedup) {
    p.variant = TandemVariant::speedup;
    p.mu2_variant = 1.2 * p.mu2;
  }
  return p;
}

inline CoupledParams coupled_params(int l) { return {0.1, 0.1, 0.2, 0.2, 0.4, 0.3, Grid{l, l}}; }

struct Pair {
  TransitionKernel original;
  ProductFormWalk perturbed;
};

inline Pair make_pair(Example e, int l) {
  if (e == Example::coupled) return {coupled(coupled_params(l)), coupled_perturbed(coupled_params(l))};
  return {tandem(tandem_params(e, l)), tandem_perturbed(tandem_params(e, l))};
}

inline const Offset kAllOffsets[] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0},
                                     {0, 1},   {1, -1}, {1, 0},  {1, 1}};

inline std::vector<State> all_states(const Grid& g) {
  std::vector<State> out;
  for (int j = 0; j <= g.l2; ++j)
    for (int i = 0; i <= g.l1; ++i) out.push_back({i, j});
  return out;
}

inline std::size_t idx(const Grid& g, State n) {
  return static_cast<std::size_t>(n.j * (g.l1 + 1) + n.i);
}

/// Dense row-stochastic matrix of the chain on S.
inline std::vector<std::vector<double>> dense_matrix(const TransitionKernel& w) {
  const Grid g = w.grid();
  const auto n_states = static_cast<std::size_t>(g.num_states());
  std::vector<std::vector<double>> p(n_states, std::vector<double>(n_states, 0.0));
  for (State n : all_states(g)) {
    for (Offset u : kAllOffsets) {
      const State t = n + u;
      if (t.i < 0 || t.j < 0 || t.i > g.l1 || t.j > g.l2) continue;
      p[idx(g, n)][idx(g, t)] += w.transition_prob(n, u);
    }
  }
  return p;
}

/// Stationary vector by Gaussian elimination with partial pivoting on
/// m (P - I) = 0 with the first equation replaced by sum m = 1.
inline std::vector<double> reference_stationary(const TransitionKernel& w) {
  const auto p = dense_matrix(w);
  const std::size_t n = p.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = p[c][r] - (r == c ? 1.0 : 0.0);
  for (std::size_t c = 0; c < n; ++c) a[0][c] = 1.0;
  a[0][n] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> m(n);
  for (std::size_t r = 0; r < n; ++r) m[r] = a[r][n] / a[r][r];
  return m;
}

/// F(n) evaluated from its per-component coefficients.
inline double reward_at(const CLinearFunction& f, State n, const Grid& g) {
  const CComponent k = c_component(n, g);
  return f.coef(k, 0) + f.coef(k, 1) * n.i + f.coef(k, 2) * n.j;
}

inline double reference_performance(const TransitionKernel& w, const CLinearFunction& f) {
  const auto m = reference_stationary(w);
  double s = 0.0;
  for (State n : all_states(w.grid())) s += m[idx(w.grid(), n)] * reward_at(f, n, w.grid());
  return s;
}

/// F^0..F^horizon by dense matrix-vector products.
inline std::vector<std::vector<double>> reference_iterates(const TransitionKernel& w,
                                                           const CLinearFunction& f, int horizon) {
  const auto p = dense_matrix(w);
  const Grid g = w.grid();
  std::vector<std::vector<double>> out(1, std::vector<double>(p.size(), 0.0));
  for (int t = 0; t < horizon; ++t) {
    std::vector<double> next(p.size(), 0.0);
    for (State n : all_states(g)) {
      double s = reward_at(f, n, g);
      for (std::size_t c = 0; c < p.size(); ++c) s += p[idx(g, n)][c] * out.back()[c];
      next[idx(g, n)] = s;
    }
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace mrbounds::testing
