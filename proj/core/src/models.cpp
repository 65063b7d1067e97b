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

#include "mrbounds/models.hpp"

#include <array>
#include <vector>

#include "mrbounds/errors.hpp"

namespace mrbounds {
namespace {

constexpr Offset kArrive1{1, 0};
constexpr Offset kArrive2{0, 1};
constexpr Offset kRoute{-1, 1};
constexpr Offset kLeave1{-1, 0};
constexpr Offset kLeave2{0, -1};

constexpr double kBalanceTol = 1e-12;
constexpr double kRateSlack = 1e-12;

// Rates are listed per component as {offset, rate} pairs.
struct Jump {
  Offset u;
  double rate;
};

CtmcRates rates_from(const Grid& g, const std::array<std::vector<Jump>, kNumCComponents>& table) {
  CtmcRates r(g);
  for (CComponent k : all_c_components())
    for (const Jump& j : table[k.slot()]) r = r.with(k, j.u, j.rate);
  return r;
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
}

ProductFormWalk with_measure(TransitionKernel kernel, double rho, double sigma) {
  GeometricMeasure m = make_measure(rho, sigma, kernel.grid());
  const BalanceReport rep = balance_residual(kernel, m);
  if (rep.max_residual > kBalanceTol) {
    throw InvariantError("perturbed walk violates global balance at " + to_string(rep.worst));
  }
  return {std::move(kernel), m};
}

}  // namespace

void TandemParams::check() const {
  require_grid(grid, kMinBuffer);
  check_positive(lambda, "lambda");
  check_positive(mu1, "mu1");
  check_positive(mu2, "mu2");
  if (lambda + mu1 + mu2 > 1.0 + kRateSlack) {
    throw ConfigError("lambda + mu1 + mu2 must not exceed 1");
  }
  switch (variant) {
    case TandemVariant::plain:
      break;
    case TandemVariant::slowdown:
      check_positive(mu2_variant, "slow-down rate");
      if (!(mu2_variant < mu2)) throw ConfigError("slow-down rate must be below mu2");
      break;
    case TandemVariant::speedup:
      if (!(mu2_variant > mu2)) throw ConfigError("speed-up rate must exceed mu2");
      if (lambda + mu1 + mu2_variant > 1.0 + kRateSlack) {
        throw ConfigError("lambda + mu1 + speed-up rate must not exceed 1");
      }
      break;
  }
}

void CoupledParams::check() const {
  require_grid(grid, kMinBuffer);
  check_positive(lambda1, "lambda1");
  check_positive(lambda2, "lambda2");
  check_positive(mu1, "mu1");
  check_positive(mu2, "mu2");
  if (!(mu1_sat > mu1)) throw ConfigError("saturated-regime mu1 must exceed mu1");
  if (!(mu2_sat > mu2)) throw ConfigError("saturated-regime mu2 must exceed mu2");
  if (lambda1 + lambda2 + mu1_sat + mu2_sat > 1.0 + kRateSlack) {
    throw ConfigError("lambda1 + lambda2 + mu1_sat + mu2_sat must not exceed 1");
  }
}

TransitionKernel tandem(const TandemParams& p) {
  p.check();
  const double l = p.lambda, m1 = p.mu1;
  const double idle2 = p.variant == TandemVariant::slowdown ? p.mu2_variant : p.mu2;
  const double full2 = p.variant == TandemVariant::speedup ? p.mu2_variant : p.mu2;
  const double m2 = p.mu2;
  return uniformize(rates_from(p.grid, {{
      /*C1*/ {{kArrive1, l}, {kRoute, m1}},
      /*C2*/ {{kArrive1, l}, {kLeave2, idle2}},
      /*C3*/ {{kArrive1, l}, {kLeave2, m2}},
      /*C4*/ {{kRoute, m1}, {kLeave2, full2}},
      /*C5*/ {{kArrive1, l}},
      /*C6*/ {{kArrive1, l}, {kLeave2, idle2}},
      /*C7*/ {{kLeave2, full2}},
      /*C8*/ {{kRoute, m1}},
      /*C9*/ {{kArrive1, l}, {kRoute, m1}, {kLeave2, m2}},
  }}));
}

ProductFormWalk tandem_perturbed(const TandemParams& p) {
  p.check();
  const double l = p.lambda, m1 = p.mu1, m2 = p.mu2;
  // Along the top edge node 1 departures leave the system instead of being
  // blocked; along the right edge rejected arrivals are replaced by upward
  // jumps. The corner rates are the unique ones balancing alpha rho^i sigma^j.
  TransitionKernel w = uniformize(rates_from(p.grid, {{
      /*C1*/ {{kArrive1, l}, {kRoute, m1}},
      /*C2*/ {{kArrive1, l}, {kLeave2, m2}},
      /*C3*/ {{kArrive1, l}, {kLeave1, m1}, {kLeave2, m2}},
      /*C4*/ {{kArrive2, l}, {kRoute, m1}, {kLeave2, m2}},
      /*C5*/ {{kArrive1, l}},
      /*C6*/ {{kArrive1, l}, {kLeave2, m2}},
      /*C7*/ {{kLeave1, m1}, {kLeave2, m2}},
      /*C8*/ {{kArrive2, l}, {kRoute, m1}},
      /*C9*/ {{kArrive1, l}, {kRoute, m1}, {kLeave2, m2}},
  }}));
  return with_measure(std::move(w), l / m1, l / m2);
}

namespace {

TransitionKernel coupled_kernel(const Grid& g, double l1, double l2, double m1, double m2,
                                double m1_top, double m2_right) {
  return uniformize(rates_from(g, {{
      /*C1*/ {{kArrive1, l1}, {kArrive2, l2}, {kLeave1, m1}},
      /*C2*/ {{kArrive1, l1}, {kArrive2, l2}, {kLeave2, m2}},
      /*C3*/ {{kArrive1, l1}, {kLeave1, m1_top}, {kLeave2, m2}},
      /*C4*/ {{kArrive2, l2}, {kLeave1, m1}, {kLeave2, m2_right}},
      /*C5*/ {{kArrive1, l1}, {kArrive2, l2}},
      /*C6*/ {{kArrive1, l1}, {kLeave2, m2}},
      /*C7*/ {{kLeave1, m1_top}, {kLeave2, m2_right}},
      /*C8*/ {{kArrive2, l2}, {kLeave1, m1}},
      /*C9*/ {{kArrive1, l1}, {kArrive2, l2}, {kLeave1, m1}, {kLeave2, m2}},
  }}));
}

}  // namespace

TransitionKernel coupled(const CoupledParams& p) {
  p.check();
  return coupled_kernel(p.grid, p.lambda1, p.lambda2, p.mu1, p.mu2, p.mu1_sat, p.mu2_sat);
}

ProductFormWalk coupled_perturbed(const CoupledParams& p) {
  p.check();
  return with_measure(coupled_kernel(p.grid, p.lambda1, p.lambda2, p.mu1, p.mu2, p.mu1, p.mu2),
                      p.lambda1 / p.mu1, p.lambda2 / p.mu2);
}

CLinearFunction measure_blocking(const Grid&) {
  CLinearFunction f;
  for (int k : {4, 7, 8}) f = f.with(CComponent(k), 0, 1.0);
  return f;
}

CLinearFunction measure_qlen1(const Grid&) {
  CLinearFunction f;
  for (int k : {1, 3, 4, 7, 8, 9}) f = f.with(CComponent(k), 1, 1.0);
  return f;
}

CLinearFunction measure_qlen2(const Grid&) {
  CLinearFunction f;
  for (int k : {2, 3, 4, 6, 7, 9}) f = f.with(CComponent(k), 2, 1.0);
  return f;
}

CLinearFunction measure_one(const Grid&) {
  CLinearFunction f;
  for (CComponent k : all_c_components()) f = f.with(k, 0, 1.0);
  return f;
}

CLinearFunction measure_by_name(std::string_view name, const Grid& g) {
  if (name == "blocking") return measure_blocking(g);
  if (name == "qlen1") return measure_qlen1(g);
  if (name == "qlen2") return measure_qlen2(g);
  if (name == "one") return measure_one(g);
  throw ConfigError("unknown measure '" + std::string(name) + "'");
}

}  // namespace mrbounds
