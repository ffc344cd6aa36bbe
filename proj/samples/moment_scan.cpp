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
//
// Prints exact, asymptotic and Monte Carlo inner-product moments for a small
// aperture sweep at N = 200 antennas.

#include <cstdio>

#include "scmimo/scmimo.hpp"

int main() {
  using namespace scmimo;
  constexpr int kAntennas = 200;
  const TrialPlan plan{50000, 2024, 2};

  std::printf("N = %d, u = sin(theta) uniform on [-1, 1]\n\n", kAntennas);
  std::printf("%6s %12s %12s %12s | %12s %12s %12s\n", "d0", "mean(exact)",
              "mean(asym)", "mean(mc)", "var(exact)", "var(asym)", "var(mc)");
  for (const double d0 : {1.0, 2.0, 4.0, 10.0, 20.0}) {
    const auto eps = epsilon_correction(kAntennas, d0);
    const auto mc = estimate_inner_moments(space_constrained(kAntennas, d0), plan);
    std::printf("%6.1f %12.6f %12.6f %12.6f | %12.6f %12.6f %12.6f\n", d0,
                exact_mean_scaled(kAntennas, d0),
                asymptotic_mean_scaled(kAntennas, d0), mc.mean_scaled.real(),
                exact_variance_scaled(kAntennas, d0),
                asymptotic_variance_scaled(kAntennas, d0, eps),
                mc.variance_scaled);
  }
  const auto ref = unlimited_reference_moments(kAntennas);
  std::printf("\nhalf-wavelength reference: mean %.6f, variance %.6f\n",
              ref.mean_scaled, ref.variance_scaled);
  return 0;
}
