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

#include "i2i/codec/intra.hpp"

#include <bit>

#include "i2i/error.hpp"

namespace i2i::codec {

namespace {

constexpr int kAngle[kNumIntraModes] = {0,   0,   32,  26,  21,  17,  13,  9,  5,  2,  0,  -2,
                                        -5,  -9,  -13, -17, -21, -26, -32, -26, -21, -17, -13, -9,
                                        -5,  -2,  0,   2,   5,   9,   13,  17,  21,  26,  32};

int inverse_angle(int angle) {
    switch (angle) {
        case -2: return -4096;
        case -5: return -1638;
        case -9: return -910;
        case -13: return -630;
        case -17: return -482;
        case -21: return -390;
        case -26: return -315;
        case -32: return -256;
        default: return 0;
    }
}

// Interleaves the bits of (ux, uy) within a CTU.
int z_index(int ux, int uy) {
    int z = 0;
    for (int b = 0; b < 8; ++b) z |= (((ux >> b) & 1) << (2 * b)) | (((uy >> b) & 1) << (2 * b + 1));
    return z;
}

}  // namespace

CausalLayout::CausalLayout(int width, int height, int ctu_size)
    : width_(width), height_(height), ctu_(ctu_size), ctus_per_row_((width + ctu_size - 1) / ctu_size) {
    if (ctu_size < 4 || ctu_size > kMaxBlockSize || !std::has_single_bit(static_cast<unsigned>(ctu_size)))
        throw InvalidArgument("CTU size must be a power of two in [4, 32]");
}

bool CausalLayout::available(int px, int py, int block_x, int block_y) const noexcept {
    if (px < 0 || py < 0 || px >= width_ || py >= height_) return false;
    const int ctu_p = (py / ctu_) * ctus_per_row_ + px / ctu_;
    const int ctu_b = (block_y / ctu_) * ctus_per_row_ + block_x / ctu_;
    if (ctu_p != ctu_b) return ctu_p < ctu_b;
    return z_index((px % ctu_) / 4, (py % ctu_) / 4) < z_index((block_x % ctu_) / 4, (block_y % ctu_) / 4);
}

ReferenceSamples gather_references(const PlaneView& plane, const CausalLayout& layout, int x, int y, int size) {
    if (size < 4 || size > kMaxBlockSize) throw InvalidArgument("block size must lie in [4, 32]");
    ReferenceSamples r;
    r.size = size;
    // Substitution order: left bottom-up, corner, above left-to-right.
    const int total = 4 * size + 1;
    std::array<int, 4 * kMaxBlockSize + 1> seq{};
    std::array<bool, 4 * kMaxBlockSize + 1> ok{};
    for (int i = 0; i < total; ++i) {
        int px, py;
        if (i < 2 * size) {
            px = x - 1;
            py = y + 2 * size - 1 - i;
        } else if (i == 2 * size) {
            px = x - 1;
            py = y - 1;
        } else {
            px = x + (i - 2 * size - 1);
            py = y - 1;
        }
        ok[i] = layout.available(px, py, x, y);
        if (ok[i]) seq[i] = plane.at(px, py);
    }
    int first = 0;
    while (first < total && !ok[first]) ++first;
    if (first == total) {
        seq.fill(1 << (8 - 1));
    } else {
        for (int i = 0; i < first; ++i) seq[i] = seq[first];
        for (int i = first + 1; i < total; ++i)
            if (!ok[i]) seq[i] = seq[i - 1];
    }
    for (int j = 0; j < 2 * size; ++j) r.left[j] = seq[2 * size - 1 - j];
    r.corner = seq[2 * size];
    for (int i = 0; i < 2 * size; ++i) r.above[i] = seq[2 * size + 1 + i];
    return r;
}

void intra_predict(const ReferenceSamples& refs, int mode, std::span<std::int32_t> out) {
    const int s = refs.size;
    if (mode < 0 || mode >= kNumIntraModes) throw InvalidArgument("intra mode out of range");
    if (out.size() != static_cast<std::size_t>(s) * s) throw InvalidArgument("prediction buffer has the wrong size");
    const int shift = std::bit_width(static_cast<unsigned>(s)) - 1;

    if (mode == kPlanarMode) {
        const int top_right = refs.above[s];
        const int bottom_left = refs.left[s];
        for (int y = 0; y < s; ++y)
            for (int x = 0; x < s; ++x)
                out[y * s + x] = ((s - 1 - x) * refs.left[y] + (x + 1) * top_right + (s - 1 - y) * refs.above[x] +
                                  (y + 1) * bottom_left + s) >>
                                 (shift + 1);
        return;
    }
    if (mode == kDcMode) {
        int sum = s;
        for (int i = 0; i < s; ++i) sum += refs.above[i] + refs.left[i];
        const int dc = sum >> (shift + 1);
        for (auto& v : out) v = dc;
        return;
    }

    const bool vertical = mode >= 18;
    const int angle = kAngle[mode];
    // ref[k] with k in [-s, 2s]; ref[0] is the corner.
    std::array<int, 3 * kMaxBlockSize + 1> buf{};
    int* ref = buf.data() + s;
    const auto& main = vertical ? refs.above : refs.left;
    const auto& side = vertical ? refs.left : refs.above;
    ref[0] = refs.corner;
    for (int k = 1; k <= 2 * s; ++k) ref[k] = main[k - 1];
    if (angle < 0) {
        const int inv = inverse_angle(angle);
        for (int k = (s * angle) >> 5; k <= -1; ++k) ref[k] = side[((k * inv + 128) >> 8) - 1];
    }
    for (int a = 0; a < s; ++a) {  // a runs across the prediction direction's rows
        const int pos = (a + 1) * angle;
        const int idx = pos >> 5;
        const int fact = pos & 31;
        for (int b = 0; b < s; ++b) {
            const int v = fact ? ((32 - fact) * ref[b + idx + 1] + fact * ref[b + idx + 2] + 16) >> 5
                               : ref[b + idx + 1];
            if (vertical) out[a * s + b] = v;
            else out[b * s + a] = v;
        }
    }
}

}  // namespace i2i::codec
