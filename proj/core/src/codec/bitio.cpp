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

#include "i2i/codec/bitio.hpp"

#include "i2i/error.hpp"

namespace i2i::codec {

void BitWriter::put(std::uint64_t value, int nbits) {
    for (int b = nbits - 1; b >= 0; --b) {
        acc_ = (acc_ << 1) | static_cast<std::uint32_t>((value >> b) & 1u);
        if (++pending_ == 8) {
            bytes_.push_back(static_cast<std::uint8_t>(acc_));
            acc_ = 0;
            pending_ = 0;
        }
    }
}

std::vector<std::uint8_t> BitWriter::finish() {
    if (pending_ > 0) {
        bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - pending_)));
        acc_ = 0;
        pending_ = 0;
    }
    return std::move(bytes_);
}

std::uint64_t BitReader::get(int nbits) {
    if (static_cast<std::size_t>(nbits) > bits_left()) throw TruncatedStream("bitstream ended inside the payload");
    std::uint64_t v = 0;
    for (int i = 0; i < nbits; ++i, ++pos_) v = (v << 1) | ((bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u);
    return v;
}

bool BitReader::at_padding() const noexcept {
    if (bits_left() >= 8) return false;
    for (std::size_t p = pos_; p < bytes_.size() * 8; ++p)
        if ((bytes_[p >> 3] >> (7 - (p & 7))) & 1u) return false;
    return true;
}

}  // namespace i2i::codec
