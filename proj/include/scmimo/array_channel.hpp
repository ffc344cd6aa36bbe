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

#ifndef SCMIMO_ARRAY_CHANNEL_HPP
#define SCMIMO_ARRAY_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scmimo/common.hpp"
#include "scmimo/rng.hpp"

namespace scmimo {

enum class ApertureMode {
  // Total array length fixed at d0 wavelengths; element spacing d0/N shrinks
  // as elements are added.
  kSpaceConstrained,
  // Fixed half-wavelength spacing; the aperture grows with N. Equivalent to
  // d0 = N/2 in the space-constrained model.
  kHalfWavelengthReference,
};

// Uniform linear array described by its element count, its aperture in
// wavelengths, and the derived per-element phase increment a (per unit
// angle sine). Immutable after construction; safe to share across workers.
class ArrayGeometry {
 public:
  ApertureMode mode() const noexcept { return mode_; }
  int num_antennas() const noexcept { return num_antennas_; }

  // Aperture in wavelengths. In reference mode this is the equivalent
  // aperture N/2 implied by the half-wavelength spacing.
  double aperture() const noexcept { return aperture_; }

  // Phase step a: element m responds with exp(-i*a*m*sin(theta)).
  // Space constrained: a = 2*pi*d0/N. Reference: a = pi exactly.
  double phase_scale() const noexcept { return phase_scale_; }

  friend ArrayGeometry make_geometry(ApertureMode mode, int num_antennas,
                                     double aperture);

 private:
  ArrayGeometry(ApertureMode mode, int num_antennas, double aperture,
                double phase_scale) noexcept
      : mode_(mode),
        num_antennas_(num_antennas),
        aperture_(aperture),
        phase_scale_(phase_scale) {}

  ApertureMode mode_;
  int num_antennas_;
  double aperture_;
  double phase_scale_;
};

inline ArrayGeometry make_geometry(ApertureMode mode, int num_antennas,
                                   double aperture) {
  if (num_antennas < 1) {
    throw std::domain_error("array needs at least one antenna");
  }
  if (mode == ApertureMode::kHalfWavelengthReference) {
    // The supplied aperture is ignored; half-wavelength spacing pins a = pi.
    return ArrayGeometry(mode, num_antennas, num_antennas / 2.0, kPi);
  }
  if (!(aperture > 0.0) || !std::isfinite(aperture)) {
    throw std::domain_error("aperture must be positive and finite");
  }
  return ArrayGeometry(mode, num_antennas, aperture,
                       kTwoPi * aperture / num_antennas);
}

inline ArrayGeometry space_constrained(int num_antennas, double aperture) {
  return make_geometry(ApertureMode::kSpaceConstrained, num_antennas, aperture);
}

inline ArrayGeometry half_wavelength_reference(int num_antennas) {
  return make_geometry(ApertureMode::kHalfWavelengthReference, num_antennas,
                       0.0);
}

// Angle sines u_k = sin(theta_k) of a user population, each in [-1, 1].
class UserAngleSet {
 public:
  explicit UserAngleSet(std::vector<double> sines) : sines_(std::move(sines)) {
    if (sines_.empty()) {
      throw std::domain_error("angle set must not be empty");
    }
    for (const double u : sines_) {
      if (!(u >= -1.0 && u <= 1.0)) {
        throw std::domain_error("angle sine outside [-1, 1]");
      }
    }
  }

  std::span<const double> sines() const noexcept { return sines_; }
  std::size_t size() const noexcept { return sines_.size(); }
  double operator[](std::size_t i) const noexcept { return sines_[i]; }

 private:
  std::vector<double> sines_;
};

// K independent draws of u = sin(theta), uniform on [-1, 1). Deterministic
// given the stream state.
inline UserAngleSet sample_angles(int count, RandomStream& stream) {
  if (count < 1) {
    throw std::domain_error("angle count must be positive");
  }
  std::vector<double> sines(static_cast<std::size_t>(count));
  for (double& u : sines) {
    u = stream.next_symmetric();
  }
  return UserAngleSet(std::move(sines));
}

namespace detail {

// Unit phasor exp(-i*a*m*u). The raw phase a*m*u grows to ~2*pi*d0, so it is
// carried as a split product and reduced modulo 2*pi before sin/cos; this
// keeps the direct/closed-form agreement budget (1e-12 absolute) intact up
// to N = 1024 and large apertures.
inline std::complex<double> steering_entry(double phase_scale, int element,
                                           double angle_sine) noexcept {
  const SplitProduct mu = two_prod(static_cast<double>(element), angle_sine);
  const SplitProduct p = two_prod(phase_scale, mu.value);
  const double residual = std::fma(phase_scale, mu.residual, p.residual);
  const double phase = reduce_two_pi(p.value, residual);
  return {std::cos(phase), -std::sin(phase)};
}

}  // namespace detail

// Line-of-sight steering channel: N unit-modulus entries
// exp(-i*a*m*u), m = 0..N-1.
class ChannelVector {
 public:
  ChannelVector(const ArrayGeometry& geometry, double angle_sine,
                std::vector<std::complex<double>> entries) noexcept
      : geometry_(geometry),
        angle_sine_(angle_sine),
        entries_(std::move(entries)) {}

  const ArrayGeometry& geometry() const noexcept { return geometry_; }
  double angle_sine() const noexcept { return angle_sine_; }
  std::span<const std::complex<double>> entries() const noexcept {
    return entries_;
  }
  int size() const noexcept { return geometry_.num_antennas(); }

 private:
  ArrayGeometry geometry_;
  double angle_sine_;
  std::vector<std::complex<double>> entries_;
};

inline ChannelVector steering_channel(const ArrayGeometry& geometry,
                                      double angle_sine) {
  if (!(angle_sine >= -1.0 && angle_sine <= 1.0)) {
    throw std::domain_error("angle sine outside [-1, 1]");
  }
  const int n = geometry.num_antennas();
  std::vector<std::complex<double>> entries(static_cast<std::size_t>(n));
  entries[0] = {1.0, 0.0};
  for (int m = 1; m < n; ++m) {
    entries[static_cast<std::size_t>(m)] =
        detail::steering_entry(geometry.phase_scale(), m, angle_sine);
  }
  return ChannelVector(geometry, angle_sine, std::move(entries));
}

// h_k^H h_j by direct summation, sum_m conj(h_k[m]) * h_j[m], accumulated in
// ascending m with compensated sums.
inline std::complex<double> inner_product(const ChannelVector& lhs,
                                          const ChannelVector& rhs) {
  if (lhs.size() != rhs.size() ||
      lhs.geometry().phase_scale() != rhs.geometry().phase_scale()) {
    throw std::invalid_argument(
        "inner product requires channels from the same geometry");
  }
  KahanSum re;
  KahanSum im;
  const auto a = lhs.entries();
  const auto b = rhs.entries();
  for (std::size_t m = 0; m < a.size(); ++m) {
    const std::complex<double> term = std::conj(a[m]) * b[m];
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

// Closed-form evaluation of the same inner product via the geometric series
//
//   sum_{m=0}^{N-1} exp(i*m*delta) = exp(i*(N-1)*delta/2)
//                                    * sin(N*delta/2) / sin(delta/2)
//
// with delta = a*(u_k - u_j). The half angle is reduced modulo pi first:
// shifting it by a multiple of pi flips the sign of numerator, denominator
// and phase factor together, so the product is unchanged and the ratio is
// evaluated far from the cancellation-prone zeros of sin. Returns N when
// sin(delta/2) vanishes within 1e-14 (coincident directions, or a full
// grating period apart).
inline std::complex<double> inner_product_closed_form(
    const ArrayGeometry& geometry, double u_k, double u_j) noexcept {
  const double n = geometry.num_antennas();
  const detail::SplitProduct diff = detail::two_sum(u_k, -u_j);
  const detail::SplitProduct p =
      detail::two_prod(0.5 * geometry.phase_scale(), diff.value);
  const double residual =
      std::fma(0.5 * geometry.phase_scale(), diff.residual, p.residual);
  const double half = detail::reduce_pi(p.value, residual);
  const double den = std::sin(half);
  if (std::abs(den) < 1e-14) {
    return {n, 0.0};
  }
  const double ratio = std::sin(n * half) / den;
  const double phase = (n - 1.0) * half;
  return {ratio * std::cos(phase), ratio * std::sin(phase)};
}

}  // namespace scmimo

#endif  // SCMIMO_ARRAY_CHANNEL_HPP
