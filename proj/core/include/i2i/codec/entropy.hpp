/*
Copyright 2026 The i2idst Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "i2i/codec/bitio.hpp"

namespace i2i::codec {

inline std::uint32_t zigzag(std::int32_t v) noexcept {
    const auto m = static_cast<std::uint32_t>(v > 0 ? v : -static_cast<std::int64_t>(v));
    return v > 0 ? 2u * m - 1u : 2u * m;
}

inline std::int32_t unzigzag(std::uint32_t m) noexcept {
    return (m & 1u) ? static_cast<std::int32_t>((m >> 1) + 1u)
                    : static_cast<std::int32_t>(-static_cast<std::int64_t>(m >> 1));
}

// Adaptive Golomb-Rice state: k is the smallest value with N * 2^k >= A, where A
// accumulates mapped magnitudes over the N samples seen; both halve at N = 32.
class RiceState {
public:
    explicit RiceState(int k0) : a_(std::uint64_t{1} << k0) {}

    int k() const noexcept {
        int k = 0;
        while ((n_ << k) < a_ && k < 31) ++k;
        return k;
    }
    void update(std::uint32_t m) noexcept {
        a_ += m;
        if (++n_ == 32) {
            a_ = (a_ + 1) >> 1;
            n_ >>= 1;
        }
    }

private:
    std::uint64_t a_;
    std::uint64_t n_ = 1;
};

inline constexpr int kRiceEscape = 16;    // unary prefixes this long switch to exp-Golomb
inline constexpr int kInitialKBits = 3;   // per-block starting parameter, 0..7

// Per block: a coded-block flag; when set, the 3-bit starting parameter
// (chosen by the encoder for the fewest bits) and the adaptive Rice codes of
// the samples from the last one back to the first, as in HEVC residual coding.
std::size_t residual_bits(std::span<const std::int32_t> samples);
void entropy_code_residual(std::span<const std::int32_t> samples, BitWriter& out);
void entropy_decode_residual(BitReader& in, std::span<std::int32_t> samples);

}  // namespace i2i::codec
