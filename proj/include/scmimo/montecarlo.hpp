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
// Monte Carlo estimators for inner-product moments and MRT ergodic sum
// rates, with a deterministic parallel trial engine, plus an independent
// Gauss-Legendre quadrature oracle for the second moment.

#ifndef SCMIMO_MONTECARLO_HPP
#define SCMIMO_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "scmimo/analytic.hpp"
#include "scmimo/array_channel.hpp"
#include "scmimo/common.hpp"
#include "scmimo/quadrature.hpp"
#include "scmimo/rng.hpp"

namespace scmimo {

// A Monte Carlo run. Results are a pure function of (trials, seed): every
// trial draws from its own counter-based substream and the reduction is
// performed in ascending trial order, so the worker count is only a
// throughput hint.
struct TrialPlan {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

namespace detail {

// Runs body(t) for t = 0..trials-1 on up to `workers` threads. The body must
// only write state addressed by t (the estimators fill per-trial slots).
template <typename Body>
void run_trials(std::uint64_t trials, unsigned workers, Body&& body) {
  if (trials == 0) {
    throw std::domain_error("trial count must be positive");
  }
  const unsigned worker_count = static_cast<unsigned>(std::min<std::uint64_t>(
      std::max(workers, 1u), trials));
  if (worker_count == 1) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      body(t);
    }
    return;
  }
  std::atomic<std::uint64_t> cursor{0};
  constexpr std::uint64_t kChunk = 256;
  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (unsigned w = 0; w < worker_count; ++w) {
    pool.emplace_back([&cursor, trials, &body] {
      for (;;) {
        const std::uint64_t begin =
            cursor.fetch_add(kChunk, std::memory_order_relaxed);
        if (begin >= trials) {
          return;
        }
        const std::uint64_t end = std::min(begin + kChunk, trials);
        for (std::uint64_t t = begin; t < end; ++t) {
          body(t);
        }
      }
    });
  }
  for (auto& worker : pool) {
    worker.join();
  }
}

}  // namespace detail

// Sample statistics of the scaled inner product (1/N) h_k^H h_j over i.i.d.
// uniform angle-sine pairs. Standard errors are sample standard deviations
// divided by sqrt(trials); stderr_mean uses the full complex deviation
// |z - mean|, which upper-bounds the per-component deviations.
struct MomentEstimate {
  std::complex<double> mean_scaled;
  double second_moment_scaled;
  double variance_scaled;
  double stderr_mean;
  double stderr_second;
  std::uint64_t trials;
};

// Standard error of the derived variance estimate
// (second moment minus squared mean, first-order error propagation).
inline double variance_std_error(const MomentEstimate& est) noexcept {
  return std::hypot(est.stderr_second,
                    2.0 * std::abs(est.mean_scaled) * est.stderr_mean);
}

inline MomentEstimate estimate_inner_moments(const ArrayGeometry& geometry,
                                             const TrialPlan& plan) {
  const double n = geometry.num_antennas();
  std::vector<std::complex<double>> samples(
      static_cast<std::size_t>(plan.trials));
  detail::run_trials(plan.trials, plan.workers, [&](std::uint64_t t) {
    RandomStream stream(plan.seed, t);
    const double u_k = stream.next_symmetric();
    const double u_j = stream.next_symmetric();
    samples[static_cast<std::size_t>(t)] =
        inner_product_closed_form(geometry, u_k, u_j) / n;
  });

  KahanSum sum_re;
  KahanSum sum_im;
  KahanSum sum_sq;
  for (const auto& z : samples) {
    sum_re.add(z.real());
    sum_im.add(z.imag());
    sum_sq.add(std::norm(z));
  }
  const double inv_t = 1.0 / static_cast<double>(plan.trials);
  const std::complex<double> mean{sum_re.value() * inv_t,
                                  sum_im.value() * inv_t};
  const double second = sum_sq.value() * inv_t;
  const double variance = second - std::norm(mean);
  if (variance < -1e-12) {
    throw internal_error("sample variance below -1e-12");
  }

  double stderr_mean = 0.0;
  double stderr_second = 0.0;
  if (plan.trials > 1) {
    KahanSum dev_mean;
    KahanSum dev_second;
    for (const auto& z : samples) {
      dev_mean.add(std::norm(z - mean));
      const double d = std::norm(z) - second;
      dev_second.add(d * d);
    }
    const double inv_tm1 = 1.0 / static_cast<double>(plan.trials - 1);
    stderr_mean = std::sqrt(dev_mean.value() * inv_tm1 * inv_t);
    stderr_second = std::sqrt(dev_second.value() * inv_tm1 * inv_t);
  }
  return {mean, second, variance, stderr_mean, stderr_second, plan.trials};
}

// Ergodic MRT sum rate estimate, bits/s/Hz. The rate per trial and user is
//   log2(1 + rho*N / (1 + (rho/N) * sum_{j != k} |h_k^H h_j|^2)),
// which already folds in the MRT identity h_k^H w_k = sqrt(N); the
// beamforming vectors are never formed. The standard error comes from the
// per-trial sum-rate samples (users within a trial share interference terms
// and are correlated).
struct RateEstimate {
  double sum_rate;
  double per_user_rate;
  double std_error;
  std::uint64_t trials;
  int num_antennas;
  int users;
  ApertureMode mode;
  double aperture;
  double rho_eff;
};

// Above this antenna count the pairwise interference terms are evaluated
// through the closed form (identical within the 1e-12 equivalence budget,
// O(K^2) instead of O(N*K^2) per trial).
inline constexpr int kDirectInnerProductMaxAntennas = 256;

inline RateEstimate estimate_sum_rate_mrt(const ArrayGeometry& geometry,
                                          int users, double rho_eff,
                                          const TrialPlan& plan) {
  const int n = geometry.num_antennas();
  if (users < 1 || n < users) {
    throw std::domain_error("need N >= K >= 1");
  }
  if (!(rho_eff > 0.0) || !std::isfinite(rho_eff)) {
    throw std::domain_error("effective SNR must be positive and finite");
  }
  const bool direct = n <= kDirectInnerProductMaxAntennas;
  std::vector<double> trial_sum_rate(static_cast<std::size_t>(plan.trials));
  detail::run_trials(plan.trials, plan.workers, [&](std::uint64_t t) {
    RandomStream stream(plan.seed, t);
    const UserAngleSet angles = sample_angles(users, stream);
    const auto sines = angles.sines();
    std::vector<double> interference(static_cast<std::size_t>(users), 0.0);
    if (direct) {
      std::vector<ChannelVector> channels;
      channels.reserve(static_cast<std::size_t>(users));
      for (int k = 0; k < users; ++k) {
        channels.push_back(
            steering_channel(geometry, sines[static_cast<std::size_t>(k)]));
      }
      for (int k = 0; k < users; ++k) {
        for (int j = k + 1; j < users; ++j) {
          const double q = std::norm(
              inner_product(channels[static_cast<std::size_t>(k)],
                            channels[static_cast<std::size_t>(j)]));
          interference[static_cast<std::size_t>(k)] += q;
          interference[static_cast<std::size_t>(j)] += q;
        }
      }
    } else {
      for (int k = 0; k < users; ++k) {
        for (int j = k + 1; j < users; ++j) {
          const double q = std::norm(inner_product_closed_form(
              geometry, sines[static_cast<std::size_t>(k)],
              sines[static_cast<std::size_t>(j)]));
          interference[static_cast<std::size_t>(k)] += q;
          interference[static_cast<std::size_t>(j)] += q;
        }
      }
    }
    double sum = 0.0;
    for (int k = 0; k < users; ++k) {
      const double sinr =
          rho_eff * n /
          (1.0 + rho_eff / n * interference[static_cast<std::size_t>(k)]);
      sum += std::log2(1.0 + sinr);
    }
    trial_sum_rate[static_cast<std::size_t>(t)] = sum;
  });

  KahanSum total;
  for (const double x : trial_sum_rate) {
    total.add(x);
  }
  const double inv_t = 1.0 / static_cast<double>(plan.trials);
  const double sum_rate = total.value() * inv_t;
  double std_error = 0.0;
  if (plan.trials > 1) {
    KahanSum dev;
    for (const double x : trial_sum_rate) {
      const double d = x - sum_rate;
      dev.add(d * d);
    }
    std_error = std::sqrt(dev.value() /
                          static_cast<double>(plan.trials - 1) * inv_t);
  }
  return {sum_rate,       sum_rate / users, std_error,
          plan.trials,    n,                users,
          geometry.mode(), geometry.aperture(), rho_eff};
}

// Independent oracle for the scaled second moment: tensor-product
// Gauss-Legendre quadrature of (1/4) * |h(u)^H h(v)|^2 / N^2 over
// (u, v) in [-1, 1]^2, with the integrand evaluated through the closed form.
// Practical for N up to a few dozen; converges as the order grows.
inline double quadrature_second_moment(const ArrayGeometry& geometry,
                                       int order) {
  if (order < 4) {
    throw std::domain_error("quadrature order must be at least 4");
  }
  const GaussLegendreRule rule = gauss_legendre_rule(order);
  const double n = geometry.num_antennas();
  KahanSum outer;
  for (int i = 0; i < order; ++i) {
    KahanSum inner;
    for (int j = 0; j < order; ++j) {
      const double q = std::norm(inner_product_closed_form(
          geometry, rule.nodes[static_cast<std::size_t>(i)],
          rule.nodes[static_cast<std::size_t>(j)]));
      inner.add(rule.weights[static_cast<std::size_t>(j)] * q);
    }
    outer.add(rule.weights[static_cast<std::size_t>(i)] * inner.value());
  }
  return outer.value() / (4.0 * n * n);
}

}  // namespace scmimo

#endif  // SCMIMO_MONTECARLO_HPP
