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
// MRT sum rate versus antenna count: a fixed 4-wavelength aperture flattens
// out while the half-wavelength reference keeps climbing.

#include <cstdio>

#include "scmimo/scmimo.hpp"

int main() {
  using namespace scmimo;
  constexpr int kUsers = 10;
  constexpr double kRhoEff = 0.01;  // 10 dB transmit SNR minus 30 dB losses
  const TrialPlan plan{5000, 7, 2};

  std::printf("%6s %18s %18s %14s\n", "N", "sum rate (d0=4)",
              "sum rate (ref)", "jensen (d0=4)");
  for (const int n : {32, 64, 128, 256, 512, 1024}) {
    const auto constrained =
        estimate_sum_rate_mrt(space_constrained(n, 4.0), kUsers, kRhoEff, plan);
    const auto reference = estimate_sum_rate_mrt(half_wavelength_reference(n),
                                                 kUsers, kRhoEff, plan);
    std::printf("%6d %12.3f +-%5.3f %12.3f +-%5.3f %14.3f\n", n,
                constrained.sum_rate, constrained.std_error,
                reference.sum_rate, reference.std_error,
                jensen_sum_rate_bound(n, kUsers, 4.0, kRhoEff));
  }
  return 0;
}
