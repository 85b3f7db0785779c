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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace i2i::codec {

inline constexpr int kNumIntraModes = 35;
inline constexpr int kPlanarMode = 0;
inline constexpr int kDcMode = 1;
inline constexpr int kHorizontalMode = 10;
inline constexpr int kVerticalMode = 26;
inline constexpr int kMaxBlockSize = 32;

inline bool is_hor_ver(int mode) noexcept { return mode == kHorizontalMode || mode == kVerticalMode; }

// Read-only view of an 8-bit plane.
struct PlaneView {
    const std::uint8_t* data = nullptr;
    int width = 0;
    int height = 0;

    std::uint8_t at(int x, int y) const noexcept { return data[static_cast<std::size_t>(y) * width + x]; }
};

// Coding order: square CTUs in raster order, each split by a quadtree whose
// leaves are visited in z-order. A sample is available to a block when it lies
// in the plane and its 4x4 unit comes earlier in that order; this depends only
// on positions, never on the chosen partition.
class CausalLayout {
public:
    CausalLayout(int width, int height, int ctu_size);

    bool available(int px, int py, int block_x, int block_y) const noexcept;
    int ctu_size() const noexcept { return ctu_; }

private:
    int width_;
    int height_;
    int ctu_;
    int ctus_per_row_;
};

// Neighbouring samples of a size x size block at (x, y): corner, 2*size above
// (left to right) and 2*size on the left (top to bottom). Missing samples are
// filled by replication from the nearest available one in the order
// bottom-left -> corner -> top-right, or 128 when nothing is available.
struct ReferenceSamples {
    int size = 0;
    int corner = 0;
    std::array<int, 2 * kMaxBlockSize> above{};
    std::array<int, 2 * kMaxBlockSize> left{};
};

ReferenceSamples gather_references(const PlaneView& plane, const CausalLayout& layout, int x, int y, int size);

// Planar, DC and the 33 angular modes with 1/32-sample interpolation, without
// smoothing or boundary filters. Output is size x size, row-major.
void intra_predict(const ReferenceSamples& refs, int mode, std::span<std::int32_t> out);

}  // namespace i2i::codec
