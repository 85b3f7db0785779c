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
#include <string>
#include <vector>

namespace i2i::codec {

inline constexpr int kBitDepth = 8;
inline constexpr int kMinDimension = 4;
inline constexpr int kMaxDimension = 1 << 14;

// 8-bit grayscale picture, row-major.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> plane;

    Frame() = default;
    Frame(int w, int h, std::uint8_t fill = 0);

    std::uint8_t& at(int x, int y) { return plane[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return plane[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const Frame&, const Frame&) = default;
};

// Throws InvalidArgument unless the dimensions lie in [kMinDimension, kMaxDimension]
// and the plane holds width * height samples.
void validate(const Frame& f);

// Binary PGM (P5) with maxval <= 255.
Frame parse_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> format_pgm(const Frame& f);
Frame read_pgm(const std::string& path);
void write_pgm(const Frame& f, const std::string& path);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace i2i::codec
