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
// Closed-form moments of the channel inner product h_k^H h_j for a
// space-constrained uniform linear array with uniform angle sines.
// Scaling convention throughout: the "scaled" mean is E{(1/N) h_k^H h_j}
// (real by symmetry) and the scaled second moment is E{(1/N^2)|h_k^H h_j|^2}.

#ifndef SCMIMO_ANALYTIC_HPP
#define SCMIMO_ANALYTIC_HPP

#include <cmath>
#include <stdexcept>

#include "scmimo/common.hpp"

namespace scmimo {

namespace detail {

inline void require_array_params(int num_antennas, double aperture) {
  if (num_antennas < 1) {
    throw std::domain_error("antenna count must be positive");
  }
  if (!(aperture > 0.0) || !std::isfinite(aperture)) {
    throw std::domain_error("aperture must be positive and finite");
  }
}

// a <= pi, i.e. N >= 2*d0: the window in which the sinc^2 series identity
// behind the asymptotic forms is valid. Hard error outside it rather than
// extrapolating.
inline void require_asymptotic_window(int num_antennas, double aperture) {
  require_array_params(num_antennas, aperture);
  if (2.0 * aperture > static_cast<double>(num_antennas)) {
    throw std::domain_error(
        "asymptotic forms need N >= 2*d0 (phase step a <= pi)");
  }
}

}  // namespace detail

// sin(x)/x with sinc(0) = 1. Even. Taylor branch below eps^(1/4) to avoid
// the 0/0 region, order 4 term kept above eps^(1/2).
inline double sinc(double x) noexcept {
  constexpr double kTaylorBound = 1.220703125e-4;   // ~eps^(1/4)
  constexpr double kOrder4Bound = 1.4901161193847656e-8;  // ~eps^(1/2)
  const double ax = std::abs(x);
  if (ax >= kTaylorBound) {
    return std::sin(x) / x;
  }
  double result = 1.0;
  if (ax >= kOrder4Bound) {
    const double x2 = x * x;
    result -= x2 / 6.0;
    result += (x2 * x2) / 120.0;
  } else if (ax > 0.0) {
    result -= (x * x) / 6.0;
  }
  return result;
}

// E{(1/N) h_k^H h_j} = (1/N) sum_{m=0}^{N-1} sinc^2(a*m), a = 2*pi*d0/N.
inline double exact_mean_scaled(int num_antennas, double aperture) {
  detail::require_array_params(num_antennas, aperture);
  const double a = kTwoPi * aperture / num_antennas;
  KahanSum sum;
  for (int m = 0; m < num_antennas; ++m) {
    const double s = sinc(a * m);
    sum.add(s * s);
  }
  return sum.value() / num_antennas;
}

// E{(1/N^2)|h_k^H h_j|^2} = (1/N^2) sum_{m1} sum_{m2} sinc^2(a*(m1 - m2)).
// Grouping equal differences collapses the double sum to O(N):
// (1/N^2) * [N + 2 * sum_{m=1}^{N-1} (N - m) sinc^2(a*m)].
inline double exact_second_moment_scaled(int num_antennas, double aperture) {
  detail::require_array_params(num_antennas, aperture);
  const double n = num_antennas;
  const double a = kTwoPi * aperture / num_antennas;
  KahanSum sum;
  sum.add(n);
  for (int m = 1; m < num_antennas; ++m) {
    const double s = sinc(a * m);
    sum.add(2.0 * (n - m) * s * s);
  }
  return sum.value() / (n * n);
}

// var{(1/N) h_k^H h_j} = second moment minus squared mean (the mean is real).
inline double exact_variance_scaled(int num_antennas, double aperture) {
  const double mean = exact_mean_scaled(num_antennas, aperture);
  return exact_second_moment_scaled(num_antennas, aperture) - mean * mean;
}

// sum_{m=0}^{inf} sinc^2(beta*m) = (1/2)(1 + pi/beta) for 0 < beta <= pi.
inline double lemma_sinc_sum(double beta) {
  if (!(beta > 0.0) || !(beta <= kPi)) {
    throw std::domain_error("series identity requires 0 < beta <= pi");
  }
  return 0.5 * (1.0 + kPi / beta);
}

// Large-N limit of the scaled mean, with the 1/(2N) finite-N refinement kept:
// 1/(2N) + 1/(4*d0).
inline double asymptotic_mean_scaled(int num_antennas, double aperture) {
  detail::require_asymptotic_window(num_antennas, aperture);
  return 1.0 / (2.0 * num_antennas) + 1.0 / (4.0 * aperture);
}

// Correction term for the asymptotic second moment:
//   epsilon = (1/(4*pi^2*d0^2)) * sum_{m=1}^{M} sin^2(a*m)/m.
// Read as an infinite series at fixed a the sum diverges logarithmically
// (the average term is 1/(2m)); the finite-N derivation only involves index
// differences up to N-1, so the default truncation is M = N-1.
struct EpsilonPolicy {
  int truncation_limit;  // number of series terms M
  double value;          // epsilon, >= 0
};

inline EpsilonPolicy epsilon_correction(int num_antennas, double aperture,
                                        int truncation_limit) {
  detail::require_array_params(num_antennas, aperture);
  if (truncation_limit < 1) {
    throw std::domain_error("epsilon truncation limit must be positive");
  }
  const double a = kTwoPi * aperture / num_antennas;
  KahanSum sum;
  for (int m = 1; m <= truncation_limit; ++m) {
    const double s = std::sin(a * m);
    sum.add(s * s / m);
  }
  const double scale = kTwoPi * aperture;  // 2*pi*d0; scale^2 = 4*pi^2*d0^2
  return {truncation_limit, sum.value() / (scale * scale)};
}

inline EpsilonPolicy epsilon_correction(int num_antennas, double aperture) {
  return epsilon_correction(num_antennas, aperture,
                            num_antennas > 1 ? num_antennas - 1 : 1);
}

// Large-N limit of the scaled second moment: 1/(2*d0) - epsilon. A negative
// result means the truncation is outside the validity of the expansion and
// is reported as a domain error rather than clamped.
inline double asymptotic_second_moment_scaled(int num_antennas,
                                              double aperture,
                                              const EpsilonPolicy& eps) {
  detail::require_asymptotic_window(num_antennas, aperture);
  const double value = 1.0 / (2.0 * aperture) - eps.value;
  if (value < 0.0) {
    throw std::domain_error(
        "asymptotic second moment negative: epsilon correction outside its "
        "validity window");
  }
  return value;
}

// Large-N limit of the scaled variance:
//   (1/(2*d0)) * (1 - 1/(2N) - 1/(8*d0)) - 1/(4N^2) - epsilon.
// Algebraically identical to the asymptotic second moment minus the squared
// asymptotic mean with the same epsilon.
inline double asymptotic_variance_scaled(int num_antennas, double aperture,
                                         const EpsilonPolicy& eps) {
  detail::require_asymptotic_window(num_antennas, aperture);
  const double n = num_antennas;
  const double value =
      (1.0 / (2.0 * aperture)) *
          (1.0 - 1.0 / (2.0 * n) - 1.0 / (8.0 * aperture)) -
      1.0 / (4.0 * n * n) - eps.value;
  if (value < 0.0) {
    throw std::domain_error(
        "asymptotic variance negative: epsilon correction outside its "
        "validity window");
  }
  return value;
}

enum class MomentProvenance { kExactFiniteN, kAsymptotic, kUnlimitedReference };

struct MomentSet {
  double mean_scaled;
  double second_moment_scaled;
  double variance_scaled;
  int num_antennas;
  double aperture;
  MomentProvenance provenance;
};

inline MomentSet exact_moments(int num_antennas, double aperture) {
  const double mean = exact_mean_scaled(num_antennas, aperture);
  const double second = exact_second_moment_scaled(num_antennas, aperture);
  return {mean,         second, second - mean * mean,
          num_antennas, aperture, MomentProvenance::kExactFiniteN};
}

inline MomentSet asymptotic_moments(int num_antennas, double aperture,
                                    const EpsilonPolicy& eps) {
  return {asymptotic_mean_scaled(num_antennas, aperture),
          asymptotic_second_moment_scaled(num_antennas, aperture, eps),
          asymptotic_variance_scaled(num_antennas, aperture, eps),
          num_antennas,
          aperture,
          MomentProvenance::kAsymptotic};
}

// Moments of the half-wavelength (unlimited space) reference deployment,
// which coincides with the space-constrained model at d0 = N/2: the scaled
// mean is exactly 1/N and the scaled variance 1/N - 1/N^2.
inline MomentSet unlimited_reference_moments(int num_antennas) {
  if (num_antennas < 1) {
    throw std::domain_error("antenna count must be positive");
  }
  const double n = num_antennas;
  const double mean = 1.0 / n;
  return {mean,         mean,    mean - mean * mean,
          num_antennas, n / 2.0, MomentProvenance::kUnlimitedReference};
}

// Jensen lower bound on the MRT sum rate, bits/s/Hz:
//   K * log2(1 + 1 / (1/(rho*N) + (K-1) * E{(1/N^2)|h_k^H h_j|^2})).
// The per-user bound is multiplied by K since users are exchangeable under
// the i.i.d. uniform angle model.
inline double jensen_sum_rate_bound(int num_antennas, int users,
                                    double aperture, double rho_eff) {
  if (users < 1 || num_antennas < users) {
    throw std::domain_error("need N >= K >= 1");
  }
  if (!(rho_eff > 0.0) || !std::isfinite(rho_eff)) {
    throw std::domain_error("effective SNR must be positive and finite");
  }
  const double second = exact_second_moment_scaled(num_antennas, aperture);
  const double denom =
      1.0 / (rho_eff * num_antennas) + (users - 1.0) * second;
  return users * std::log2(1.0 + 1.0 / denom);
}

}  // namespace scmimo

#endif  // SCMIMO_ANALYTIC_HPP
