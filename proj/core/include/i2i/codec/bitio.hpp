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

namespace i2i::codec {

// MSB-first bit packing.
class BitWriter {
public:
    void put(std::uint64_t value, int nbits);
    void put_bit(bool b) { put(b ? 1u : 0u, 1); }
    // Pads the last byte with zeros.
    std::vector<std::uint8_t> finish();
    std::size_t bit_count() const noexcept { return bytes_.size() * 8 + static_cast<std::size_t>(pending_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint32_t acc_ = 0;
    int pending_ = 0;
};

// Reading past the end throws TruncatedStream.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t get(int nbits);
    bool get_bit() { return get(1) != 0; }
    std::size_t bits_left() const noexcept { return bytes_.size() * 8 - pos_; }
    // True when only zero padding (< 8 bits) remains.
    bool at_padding() const noexcept;

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace i2i::codec
