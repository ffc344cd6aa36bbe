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

#ifndef SCMIMO_COMMON_HPP
#define SCMIMO_COMMON_HPP

#include <cmath>
#include <stdexcept>

namespace scmimo {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Residual of rounding pi to double; kPi + kPiResidual carries pi to ~1e-32.
inline constexpr double kPiResidual = 1.2246467991473531772e-16;

// Raised when an estimator violates one of its own postconditions
// (e.g. a sample variance below -1e-12). Distinct from parameter errors.
class internal_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the output writers on filesystem failures.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Neumaier-compensated running sum. All long series in this library are
// accumulated in a fixed (ascending) order through one of these, which keeps
// the 1e-12 identity checks meaningful at 1e5+ terms and makes reductions
// bit-reproducible.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {

// value + residual == a * b exactly.
struct SplitProduct {
  double value;
  double residual;
};

inline SplitProduct two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// value + residual == a + b exactly (Knuth two-sum, branch free).
inline SplitProduct two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Reduce value + residual modulo 2*pi into [-pi, pi]. The quotient is removed
// with a split pi so the result keeps near full precision even when the input
// phase is several thousand radians.
inline double reduce_two_pi(double value, double residual) noexcept {
  const double k = std::nearbyint(value / kTwoPi);
  double r = std::fma(-k, kTwoPi, value);
  r = std::fma(-k, 2.0 * kPiResidual, r);
  return r + residual;
}

// Same reduction with period pi, into [-pi/2, pi/2].
inline double reduce_pi(double value, double residual) noexcept {
  const double k = std::nearbyint(value / kPi);
  double r = std::fma(-k, kPi, value);
  r = std::fma(-k, kPiResidual, r);
  return r + residual;
}

}  // namespace detail

}  // namespace scmimo

#endif  // SCMIMO_COMMON_HPP
