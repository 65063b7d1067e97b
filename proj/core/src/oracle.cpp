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

#include "mrbounds/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "mrbounds/errors.hpp"

namespace mrbounds {
namespace {

// out = m P.
void push_forward(const TransitionKernel& w, const std::vector<double>& m, std::vector<double>& out) {
  const Grid& g = w.grid();
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 0; j <= g.l2; ++j) {
    for (int i = 0; i <= g.l1; ++i) {
      const State n{i, j};
      const double mass = m[state_index(g, n)];
      const CComponent k = c_component(n, g);
      for (Offset u : neighbors(k)) out[state_index(g, n + u)] += mass * w.prob(k, u);
    }
  }
}

void renormalize(std::vector<double>& m) {
  double total = 0.0;
  for (double& v : m) {
    if (v < 0.0 && v > -1e-15) v = 0.0;
    total += v;
  }
  for (double& v : m) v /= total;
}

}  // namespace

StationaryDistribution stationary(const TransitionKernel& w) {
  const Grid& g = w.grid();
  const WalkDiagnostics diag = validate(w);
  if (!diag.irreducible) {
    std::string msg = "stationary: chain is reducible, balance system is singular";
    for (const auto& issue : diag.issues) msg += "; " + issue;
    throw DomainError(msg);
  }
  const auto n = static_cast<Eigen::Index>(g.num_states());
  // Row n' of (P^T - I): inflow into n' minus m(n').
  Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(n, n);
  for (int j = 0; j <= g.l2; ++j) {
    for (int i = 0; i <= g.l1; ++i) {
      const State s{i, j};
      const CComponent k = c_component(s, g);
      const auto col = static_cast<Eigen::Index>(state_index(g, s));
      for (Offset u : neighbors(k)) {
        a(static_cast<Eigen::Index>(state_index(g, s + u)), col) += w.prob(k, u);
      }
    }
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  const Eigen::VectorXd x = a.partialPivLu().solve(rhs);

  StationaryDistribution out{g, std::vector<double>(x.data(), x.data() + n)};
  if (const auto lo = std::min_element(out.m.begin(), out.m.end()); *lo < -1e-12) {
    throw InvariantError("stationary: negative probability " + std::to_string(*lo));
  }
  renormalize(out.m);
  return out;
}

StationaryDistribution stationary_power(const TransitionKernel& w, double tol, int max_iterations) {
  const Grid& g = w.grid();
  const auto n = static_cast<std::size_t>(g.num_states());
  std::vector<double> m(n, 1.0 / static_cast<double>(n)), next(n);
  for (int it = 0; it < max_iterations; ++it) {
    push_forward(w, m, next);
    double diff = 0.0;
    for (std::size_t s = 0; s < n; ++s) diff = std::max(diff, std::abs(next[s] - m[s]));
    m.swap(next);
    if (diff <= tol) {
      renormalize(m);
      return {g, std::move(m)};
    }
  }
  throw DomainError("stationary_power: no convergence within " + std::to_string(max_iterations) +
                    " iterations");
}

double stationary_residual(const TransitionKernel& w, const StationaryDistribution& m) {
  std::vector<double> mp(m.m.size());
  push_forward(w, m.m, mp);
  double worst = 0.0;
  for (std::size_t s = 0; s < mp.size(); ++s) worst = std::max(worst, std::abs(mp[s] - m.m[s]));
  return worst;
}

double performance(const StationaryDistribution& m, const CLinearFunction& f) {
  const Grid& g = m.grid;
  double total = 0.0;
  for (int j = 0; j <= g.l2; ++j)
    for (int i = 0; i <= g.l1; ++i) total += m({i, j}) * f({i, j}, g);
  return total;
}

double performance(const TransitionKernel& w, const CLinearFunction& f) {
  return performance(stationary(w), f);
}

Containment containment(const BoundResult& b, double exact, double tol) {
  Containment c;
  c.lower_margin = exact - b.lower;
  c.upper_margin = b.upper - exact;
  c.pass = c.lower_margin >= -tol && c.upper_margin >= -tol;
  return c;
}

}  // namespace mrbounds
