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

#ifndef SCMIMO_RNG_HPP
#define SCMIMO_RNG_HPP

#include <array>
#include <cstdint>

namespace scmimo {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
// a 128-bit counter and a 64-bit key map to a 128-bit block, so any
// (seed, stream, position) can be evaluated independently on any worker.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) noexcept {
    constexpr std::uint32_t kMult0 = 0xD2511F53u;
    constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// One logical substream of the Philox generator, identified by
// (seed, stream_index). A stream is owned by exactly one worker at a time;
// independent trials get independent stream indices, which is what makes the
// Monte Carlo estimators a pure function of (trials, seed).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream_index),
                static_cast<std::uint32_t>(stream_index >> 32)} {}

  // Uniform on [0, 1) with 53-bit resolution.
  double next_unit() noexcept {
    if (cursor_ == 2) refill();
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(block_[2 * cursor_ + 1]) << 32) |
        block_[2 * cursor_];
    ++cursor_;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  // Uniform on [-1, 1).
  double next_symmetric() noexcept { return 2.0 * next_unit() - 1.0; }

 private:
  void refill() noexcept {
    block_ = Philox4x32::generate({stream_[0], stream_[1], position_, 0u}, key_);
    ++position_;
    cursor_ = 0;
  }

  Philox4x32::Key key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint32_t position_ = 0;
  Philox4x32::Counter block_{};
  int cursor_ = 2;
};

}  // namespace scmimo

#endif  // SCMIMO_RNG_HPP
