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

#include "i2i/i2i_exec.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "i2i/error.hpp"

namespace i2i::exec {

namespace {

constexpr std::int64_t kInt32Max = std::numeric_limits<std::int32_t>::max();
constexpr std::int64_t kInt32Min = std::numeric_limits<std::int32_t>::min();

std::int32_t checked(std::int64_t v) {
    if (v > kInt32Max || v < kInt32Min)
        throw OverflowError("lifting step leaves the 32-bit range (" + std::to_string(v) + ")");
    return static_cast<std::int32_t>(v);
}

}  // namespace

I2ITransform::I2ITransform(lift::QuantizedLiftingNetwork network) : net_(std::move(network)) {
    if (net_.n == 0 || net_.n > 64) throw InvalidArgument("network size must lie in [1, 64]");
    if (net_.l < 0 || net_.l > 24) throw InvalidArgument("integer execution supports 0 <= l <= 24");
    if (net_.output_permutation.size() != net_.n) throw InvalidArgument("network permutation has the wrong length");
    std::vector<bool> seen(net_.n, false);
    for (const int p : net_.output_permutation) {
        if (p < 0 || p >= static_cast<int>(net_.n) || seen[static_cast<std::size_t>(p)])
            throw InvalidArgument("network permutation is not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    const std::int64_t kmax = std::int64_t{1} << 31;
    for (const auto& s : net_.steps) {
        if (s.src < 0 || s.dst < 0 || s.src >= static_cast<int>(net_.n) || s.dst >= static_cast<int>(net_.n) ||
            s.src == s.dst)
            throw InvalidArgument("lifting step has invalid branches");
        if (s.k >= kmax || s.k <= -kmax) throw InvalidArgument("lifting parameter too large for integer execution");
    }
}

void I2ITransform::forward_strided(std::int32_t* data, std::size_t stride) const {
    const std::size_t n = net_.n;
    std::int32_t buf[64];
    for (std::size_t b = 0; b < n; ++b) {
        const std::int32_t v = data[b * stride];
        if (v > kMaxInput || v < -kMaxInput)
            throw OverflowError("input sample " + std::to_string(v) + " exceeds the executor range");
        buf[b] = v;
    }
    for (const auto& s : net_.steps)
        buf[s.dst] = checked(buf[s.dst] + lift_term(s.k, buf[s.src], net_.l));
    for (std::size_t m = 0; m < n; ++m) data[m * stride] = buf[net_.output_permutation[m]];
}

void I2ITransform::inverse_strided(std::int32_t* data, std::size_t stride) const {
    const std::size_t n = net_.n;
    std::int32_t buf[64];
    for (std::size_t m = 0; m < n; ++m) buf[net_.output_permutation[m]] = data[m * stride];
    for (auto it = net_.steps.rbegin(); it != net_.steps.rend(); ++it)
        buf[it->dst] = checked(buf[it->dst] - lift_term(it->k, buf[it->src], net_.l));
    for (std::size_t b = 0; b < n; ++b) data[b * stride] = buf[b];
}

std::vector<std::int32_t> I2ITransform::forward(std::span<const std::int32_t> x) const {
    if (x.size() != net_.n)
        throw InvalidArgument("vector length " + std::to_string(x.size()) + " does not match transform size " +
                              std::to_string(net_.n));
    std::vector<std::int32_t> out(x.begin(), x.end());
    forward_strided(out.data(), 1);
    return out;
}

std::vector<std::int32_t> I2ITransform::inverse(std::span<const std::int32_t> y) const {
    if (y.size() != net_.n)
        throw InvalidArgument("vector length " + std::to_string(y.size()) + " does not match transform size " +
                              std::to_string(net_.n));
    std::vector<std::int32_t> out(y.begin(), y.end());
    inverse_strided(out.data(), 1);
    return out;
}

std::vector<std::int64_t> I2ITransform::output_bound(std::int64_t bound) const {
    std::vector<std::int64_t> lo(net_.n, -bound), hi(net_.n, bound);
    for (const auto& s : net_.steps) {
        const std::int64_t a = lift_term(s.k, lo[static_cast<std::size_t>(s.src)], net_.l);
        const std::int64_t b = lift_term(s.k, hi[static_cast<std::size_t>(s.src)], net_.l);
        lo[static_cast<std::size_t>(s.dst)] += std::min(a, b);
        hi[static_cast<std::size_t>(s.dst)] += std::max(a, b);
    }
    std::vector<std::int64_t> out(net_.n);
    for (std::size_t m = 0; m < net_.n; ++m) {
        const auto p = static_cast<std::size_t>(net_.output_permutation[m]);
        out[m] = std::max(std::abs(lo[p]), std::abs(hi[p]));
    }
    return out;
}

std::vector<std::int32_t> forward_i2i_1d(const I2ITransform& t, std::span<const std::int32_t> x) {
    return t.forward(x);
}

std::vector<std::int32_t> inverse_i2i_1d(const I2ITransform& t, std::span<const std::int32_t> y) {
    return t.inverse(y);
}

namespace {

void check_square(const I2ITransform& t, const ResidualBlock& block) {
    if (block.width != block.height || block.width != static_cast<int>(t.size()) ||
        block.samples.size() != static_cast<std::size_t>(block.width) * static_cast<std::size_t>(block.height))
        throw InvalidArgument("block " + std::to_string(block.width) + "x" + std::to_string(block.height) +
                              " does not match a " + std::to_string(t.size()) + "-point transform");
}

}  // namespace

ResidualBlock forward_i2i_2d(const I2ITransform& t, const ResidualBlock& block) {
    check_square(t, block);
    ResidualBlock out = block;
    const std::size_t n = t.size();
    for (std::size_t r = 0; r < n; ++r) t.forward_strided(out.samples.data() + r * n, 1);
    for (std::size_t c = 0; c < n; ++c) t.forward_strided(out.samples.data() + c, n);
    return out;
}

ResidualBlock inverse_i2i_2d(const I2ITransform& t, const ResidualBlock& block) {
    check_square(t, block);
    ResidualBlock out = block;
    const std::size_t n = t.size();
    for (std::size_t c = 0; c < n; ++c) t.inverse_strided(out.samples.data() + c, n);
    for (std::size_t r = 0; r < n; ++r) t.inverse_strided(out.samples.data() + r * n, 1);
    return out;
}

ResidualBlock rdpcm_forward(const ResidualBlock& block, RdpcmDirection dir) {
    ResidualBlock out = block;
    for (int r = 0; r < block.height; ++r)
        for (int c = 0; c < block.width; ++c) {
            if (dir == RdpcmDirection::Horizontal && c > 0) out.at(r, c) = block.at(r, c) - block.at(r, c - 1);
            if (dir == RdpcmDirection::Vertical && r > 0) out.at(r, c) = block.at(r, c) - block.at(r - 1, c);
        }
    return out;
}

ResidualBlock rdpcm_inverse(const ResidualBlock& block, RdpcmDirection dir) {
    ResidualBlock out = block;
    for (int r = 0; r < block.height; ++r)
        for (int c = 0; c < block.width; ++c) {
            if (dir == RdpcmDirection::Horizontal && c > 0) out.at(r, c) += out.at(r, c - 1);
            if (dir == RdpcmDirection::Vertical && r > 0) out.at(r, c) += out.at(r - 1, c);
        }
    return out;
}

SelfTestReport self_test(const I2ITransform& t, int range) {
    if (range < 0) throw InvalidArgument("self-test range must be non-negative");
    const std::size_t n = t.size();
    SelfTestReport report;
    std::vector<std::int32_t> x(n, -range);
    while (true) {
        ++report.cases;
        if (t.inverse(t.forward(x)) != x) ++report.failures;
        std::size_t d = 0;
        while (d < n && x[d] == range) x[d++] = -range;
        if (d == n) break;
        ++x[d];
    }
    return report;
}

}  // namespace i2i::exec
