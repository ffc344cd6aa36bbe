// SPDX-License-Identifier: Apache-2.0
//
// scmimo - space-constrained massive MIMO channel statistics
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCMIMO_QUADRATURE_HPP
#define SCMIMO_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "scmimo/common.hpp"

namespace scmimo {

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1],
// in ascending node order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// P_n(x) and P_{n-1}(x) via the three-term recurrence.
inline void legendre_pair(int order, double x, double& pn, double& pn1) {
  double p0 = 1.0;
  double p1 = 0.0;
  for (int j = 1; j <= order; ++j) {
    const double p2 = p1;
    p1 = p0;
    p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
  }
  pn = p0;
  pn1 = p1;
}

}  // namespace detail

inline GaussLegendreRule gauss_legendre_rule(int order) {
  if (order < 1) {
    throw std::domain_error("quadrature order must be positive");
  }
  GaussLegendreRule rule;
  rule.nodes.assign(static_cast<std::size_t>(order), 0.0);
  rule.weights.assign(static_cast<std::size_t>(order), 0.0);
  const int half = order / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-angle initial guess for the i-th largest root, then Newton.
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pn = 0.0;
    double pn1 = 0.0;
    double dpn = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      detail::legendre_pair(order, x, pn, pn1);
      dpn = order * (x * pn - pn1) / (x * x - 1.0);
      const double step = pn / dpn;
      x -= step;
      if (std::abs(step) <= 1e-15) {
        break;
      }
    }
    detail::legendre_pair(order, x, pn, pn1);
    dpn = order * (x * pn - pn1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    rule.weights[static_cast<std::size_t>(i)] = w;
  }
  if (order % 2 == 1) {
    double pn = 0.0;
    double pn1 = 0.0;
    detail::legendre_pair(order, 0.0, pn, pn1);
    const double dpn = order * (0.0 * pn - pn1) / (0.0 - 1.0);
    rule.nodes[static_cast<std::size_t>(half)] = 0.0;
    rule.weights[static_cast<std::size_t>(half)] = 2.0 / (dpn * dpn);
  }
  return rule;
}

}  // namespace scmimo

#endif  // SCMIMO_QUADRATURE_HPP
