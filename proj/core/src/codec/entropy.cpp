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

#include "i2i/codec/entropy.hpp"

#include <algorithm>
#include <bit>

#include "i2i/error.hpp"

namespace i2i::codec {

namespace {

constexpr int kMaxK0 = (1 << kInitialKBits) - 1;

std::size_t exp_golomb_bits(std::uint64_t x) noexcept {
    return 2 * static_cast<std::size_t>(std::bit_width(x + 1) - 1) + 1;
}

std::size_t symbol_bits(std::uint32_t m, int k) noexcept {
    const std::uint64_t q = m >> k;
    if (q < kRiceEscape) return static_cast<std::size_t>(q) + 1 + static_cast<std::size_t>(k);
    return kRiceEscape + exp_golomb_bits(q - kRiceEscape) + static_cast<std::size_t>(k);
}

std::size_t run_bits(std::span<const std::int32_t> samples, int k0) {
    RiceState st(k0);
    std::size_t bits = 0;
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        const auto m = zigzag(*it);
        bits += symbol_bits(m, st.k());
        st.update(m);
    }
    return bits;
}

// Returns (k0, bits) with the fewest bits; ties keep the smaller k0.
std::pair<int, std::size_t> best_start(std::span<const std::int32_t> samples) {
    int best_k = 0;
    std::size_t best = run_bits(samples, 0);
    for (int k0 = 1; k0 <= kMaxK0; ++k0) {
        const auto b = run_bits(samples, k0);
        if (b < best) {
            best = b;
            best_k = k0;
        }
    }
    return {best_k, best};
}

bool all_zero(std::span<const std::int32_t> samples) {
    return std::all_of(samples.begin(), samples.end(), [](std::int32_t v) { return v == 0; });
}

void put_exp_golomb(BitWriter& out, std::uint64_t x) {
    const int len = std::bit_width(x + 1);
    out.put(0, len - 1);
    out.put(x + 1, len);
}

std::uint64_t get_exp_golomb(BitReader& in) {
    int zeros = 0;
    while (!in.get_bit()) {
        if (++zeros > 32) throw FormatError("residual code: exp-Golomb prefix too long");
    }
    return ((std::uint64_t{1} << zeros) | in.get(zeros)) - 1;
}

}  // namespace

std::size_t residual_bits(std::span<const std::int32_t> samples) {
    if (all_zero(samples)) return 1;
    return 1 + kInitialKBits + best_start(samples).second;
}

void entropy_code_residual(std::span<const std::int32_t> samples, BitWriter& out) {
    if (all_zero(samples)) {
        out.put_bit(false);
        return;
    }
    out.put_bit(true);
    const int k0 = best_start(samples).first;
    out.put(static_cast<std::uint64_t>(k0), kInitialKBits);
    RiceState st(k0);
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        const auto m = zigzag(*it);
        const int k = st.k();
        const std::uint64_t q = m >> k;
        if (q < kRiceEscape) {
            out.put((std::uint64_t{1} << (q + 1)) - 2, static_cast<int>(q) + 1);
        } else {
            out.put((std::uint64_t{1} << kRiceEscape) - 1, kRiceEscape);
            put_exp_golomb(out, q - kRiceEscape);
        }
        out.put(m & ((std::uint64_t{1} << k) - 1), k);
        st.update(m);
    }
}

void entropy_decode_residual(BitReader& in, std::span<std::int32_t> samples) {
    if (!in.get_bit()) {
        std::fill(samples.begin(), samples.end(), 0);
        return;
    }
    RiceState st(static_cast<int>(in.get(kInitialKBits)));
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        const int k = st.k();
        std::uint64_t q = 0;
        while (q < kRiceEscape && in.get_bit()) ++q;
        if (q == kRiceEscape) q += get_exp_golomb(in);
        if (q > (std::uint64_t{0xFFFFFFFFu} >> k)) throw FormatError("residual code: value out of range");
        const std::uint64_t m = (q << k) | in.get(k);
        *it = unzigzag(static_cast<std::uint32_t>(m));
        st.update(static_cast<std::uint32_t>(m));
    }
}

}  // namespace i2i::codec
