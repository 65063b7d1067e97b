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

#include "mrbounds/product_form.hpp"

#include <cmath>

#include "mrbounds/errors.hpp"

namespace mrbounds {
namespace {

double geometric_sum(double r, int l) {
  if (r == 1.0) return static_cast<double>(l + 1);
  return (1.0 - std::pow(r, l + 1)) / (1.0 - r);
}

}  // namespace

double GeometricMeasure::operator()(State n) const {
  return alpha * std::pow(rho, n.i) * std::pow(sigma, n.j);
}

double normalize(double rho, double sigma, const Grid& g) {
  if (!(rho > 0.0) || !(sigma > 0.0)) throw DomainError("rho and sigma must be positive");
  return 1.0 / (geometric_sum(rho, g.l1) * geometric_sum(sigma, g.l2));
}

GeometricMeasure make_measure(double rho, double sigma, const Grid& g) {
  return {rho, sigma, normalize(rho, sigma, g), g};
}

BalanceReport balance_residual(const TransitionKernel& w, const GeometricMeasure& m) {
  const Grid& g = w.grid();
  BalanceReport r;
  for (int j = 0; j <= g.l2; ++j) {
    for (int i = 0; i <= g.l1; ++i) {
      const State n{i, j};
      double inflow = 0.0;
      for (Offset u : neighbors(c_component(n, g))) inflow += w.transition_prob(n + u, -u) * m(n + u);
      const double res = std::abs(m(n) - inflow);
      if (res > r.max_residual) r = {res, n};
    }
  }
  return r;
}

double Perturbation::at(CComponent k, Offset u) const {
  if (u.du < -1 || u.du > 1 || u.dv < -1 || u.dv > 1) return 0.0;
  return q_[k.slot()][offset_slot(u)];
}

double Perturbation::at(State n, Offset u) const { return at(c_component(n, grid_), u); }

bool Perturbation::is_zero() const {
  for (const auto& row : q_)
    for (double v : row)
      if (v != 0.0) return false;
  return true;
}

Perturbation perturbation(const TransitionKernel& original, const TransitionKernel& perturbed) {
  if (!(original.grid() == perturbed.grid())) throw ConfigError("kernels live on different grids");
  JumpTable q{};
  for (CComponent k : all_c_components()) {
    for (Offset u : neighbors(k)) {
      const double d = perturbed.prob(k, u) - original.prob(k, u);
      if (d != 0.0 && u != kStay && !is_unit_step(u)) {
        throw ConfigError("perturbation at C_" + std::to_string(k.value()) + " offset " +
                          to_string(u) + " is not along a unit direction");
      }
      q[k.slot()][offset_slot(u)] = d;
    }
  }
  return Perturbation(original.grid(), q);
}

CLinearFunction CLinearFunction::with(CComponent k, int d, double value) const {
  CLinearFunction out = *this;
  out.f_[k.slot()][static_cast<std::size_t>(d)] = value;
  return out;
}

double CLinearFunction::eval(CComponent k, State n) const {
  const auto& c = f_[k.slot()];
  return c[0] + c[1] * n.i + c[2] * n.j;
}

ComponentWeights component_weights(const GeometricMeasure& m) {
  // The measure factorizes, so each rectangle sum is a product of axis sums.
  auto axis = [](double r, int lo, int hi) {
    std::array<double, 2> s{};  // sum r^x, sum x r^x
    double p = std::pow(r, lo);
    for (int x = lo; x <= hi; ++x, p *= r) {
      s[0] += p;
      s[1] += x * p;
    }
    return s;
  };
  ComponentWeights w{};
  for (CComponent k : all_c_components()) {
    const Rect rect = c_rect(k, m.grid);
    const auto sx = axis(m.rho, rect.i_lo, rect.i_hi);
    const auto sy = axis(m.sigma, rect.j_lo, rect.j_hi);
    w[k.slot()] = {m.alpha * sx[0] * sy[0], m.alpha * sx[1] * sy[0], m.alpha * sx[0] * sy[1]};
  }
  return w;
}

double weighted_sum(const GeometricMeasure& m, const CLinearFunction& f) {
  const Grid& g = m.grid;
  double total = 0.0;
  for (int j = 0; j <= g.l2; ++j)
    for (int i = 0; i <= g.l1; ++i) total += f({i, j}, g) * m({i, j});
  return total;
}

double weighted_sum(const ComponentWeights& w, const CLinearFunction& f) {
  double total = 0.0;
  for (CComponent k : all_c_components())
    for (int d = 0; d < 3; ++d) total += w[k.slot()][static_cast<std::size_t>(d)] * f.coef(k, d);
  return total;
}

}  // namespace mrbounds
