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
#include <vector>

#include "i2i/lifting_designer.hpp"

namespace i2i::exec {

// Forward inputs must satisfy |v| <= kMaxInput; every intermediate value must
// stay inside int32.
inline constexpr std::int32_t kMaxInput = 1 << 20;

// Rounded lifting term (k * x + 2^(l-1)) >> l with an arithmetic shift. The
// forward and inverse paths both go through this function.
// The term rises monotonically with k * x, which the interval bound relies on.
inline std::int64_t lift_term(std::int64_t k, std::int64_t x, int l) noexcept {
    const std::int64_t prod = k * x;
    if (l == 0) return prod;
    return (prod + (std::int64_t{1} << (l - 1))) >> l;
}

// Integer execution of a quantized lifting network. Immutable once built.
class I2ITransform {
public:
    explicit I2ITransform(lift::QuantizedLiftingNetwork network);

    std::size_t size() const noexcept { return net_.n; }
    const lift::QuantizedLiftingNetwork& network() const noexcept { return net_; }

    std::vector<std::int32_t> forward(std::span<const std::int32_t> x) const;
    std::vector<std::int32_t> inverse(std::span<const std::int32_t> y) const;

    // In-place variants over a strided vector (used by the 2-D passes).
    void forward_strided(std::int32_t* data, std::size_t stride) const;
    void inverse_strided(std::int32_t* data, std::size_t stride) const;

    // Worst-case |output| per coefficient for inputs bounded by |x| <= bound,
    // from interval arithmetic over the steps.
    std::vector<std::int64_t> output_bound(std::int64_t bound) const;

private:
    lift::QuantizedLiftingNetwork net_;
};

struct ResidualBlock {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> samples;  // row-major

    ResidualBlock() = default;
    ResidualBlock(int w, int h) : width(w), height(h), samples(static_cast<std::size_t>(w) * h, 0) {}

    std::int32_t& at(int r, int c) { return samples[static_cast<std::size_t>(r) * width + c]; }
    std::int32_t at(int r, int c) const { return samples[static_cast<std::size_t>(r) * width + c]; }

    friend bool operator==(const ResidualBlock&, const ResidualBlock&) = default;
};

std::vector<std::int32_t> forward_i2i_1d(const I2ITransform& t, std::span<const std::int32_t> x);
std::vector<std::int32_t> inverse_i2i_1d(const I2ITransform& t, std::span<const std::int32_t> y);

// Rows first, then columns; the inverse undoes columns, then rows.
ResidualBlock forward_i2i_2d(const I2ITransform& t, const ResidualBlock& block);
ResidualBlock inverse_i2i_2d(const I2ITransform& t, const ResidualBlock& block);

enum class RdpcmDirection { Horizontal, Vertical };

ResidualBlock rdpcm_forward(const ResidualBlock& block, RdpcmDirection dir);
ResidualBlock rdpcm_inverse(const ResidualBlock& block, RdpcmDirection dir);

struct SelfTestReport {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;

    bool passed() const noexcept { return failures == 0; }
};

// inverse(forward(x)) == x for every vector with entries in [-range, range].
SelfTestReport self_test(const I2ITransform& t, int range = 2);

}  // namespace i2i::exec
