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
#include <memory>
#include <span>
#include <vector>

#include "i2i/codec/frame.hpp"
#include "i2i/codec/intra.hpp"
#include "i2i/codec/profile.hpp"
#include "i2i/i2i_exec.hpp"
#include "i2i/lifting_designer.hpp"

namespace i2i::codec {

inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr int kCtuLog2 = 5;
inline constexpr int kMinBlockLog2 = 2;
inline constexpr int kModeBits = 6;

// Transforms used by the I2I_DST path. Outputs should be ordered by
// decreasing expected variance; the coefficient scan assumes it.
struct CodecNetworks {
    lift::QuantizedLiftingNetwork dst4;
    lift::QuantizedLiftingNetwork dst8;
};

// 4-point l=3 design from the 4-rotation search and 8-point l=8 EDST design,
// both at rho = 0.95.
const CodecNetworks& default_networks();

// CRC-32 of the two serialized networks; stored in every stream.
std::uint32_t network_fingerprint(const CodecNetworks& nets);

// Residual path transforms plus the coefficient scans.
class ResidualCoder {
public:
    ResidualCoder(CodecProfile profile, const CodecNetworks& nets);

    CodecProfile profile() const noexcept { return profile_; }

    // Residual (row-major, size x size) -> coefficients in scan order.
    void forward(ResidualPath path, int size, std::span<const std::int32_t> residual,
                 std::span<std::int32_t> coeffs) const;
    void inverse(ResidualPath path, int size, std::span<const std::int32_t> coeffs,
                 std::span<std::int32_t> residual) const;

private:
    const exec::I2ITransform& transform(int size) const;

    CodecProfile profile_;
    std::unique_ptr<exec::I2ITransform> t4_;
    std::unique_ptr<exec::I2ITransform> t8_;
    std::array<std::vector<int>, 6> scans_;  // diagonal scan per log2 size
};

struct BlockChoice {
    int mode = 0;
    ResidualPath path = ResidualPath::Skip;
    std::vector<std::int32_t> coeffs;
    std::size_t bits = 0;  // mode index + residual
};

// Tries every intra mode on the block (its path follows from the profile) and
// keeps the cheapest; ties go to the smaller mode id.
BlockChoice choose_block_coding(const PlaneView& source, const CausalLayout& layout, int x, int y, int size,
                                const ResidualCoder& coder);

struct BlockRecord {
    int x = 0;
    int y = 0;
    int size = 0;
    int mode = 0;
    ResidualPath path = ResidualPath::Skip;
    std::size_t bits = 0;
};

struct EncodeResult {
    std::vector<std::uint8_t> bytes;
    std::vector<BlockRecord> blocks;
};

// Frames whose sides are not multiples of 4 are padded by edge replication;
// the header keeps the true size and the decoder crops.
EncodeResult encode_frame(const Frame& frame, CodecProfile profile, const CodecNetworks& nets = default_networks());

struct DecodeResult {
    Frame frame;
    CodecProfile profile = CodecProfile::HEVCV1;
    std::vector<BlockRecord> blocks;
};

// Throws FormatError (bad header, foreign networks, trailing data, invalid
// samples), TruncatedStream or ChecksumMismatch. Nothing is returned on error.
DecodeResult decode_frame(std::span<const std::uint8_t> stream, const CodecNetworks& nets = default_networks());

// Number of blocks whose path differs from the profile policy.
std::size_t audit_policy(CodecProfile profile, const std::vector<BlockRecord>& blocks);

struct UsageStats {
    // Percent of coded pixels per block size 4, 8, 16, 32.
    std::array<double, 4> size_share{};
    double hor_ver_share = 0.0;
    double other_share = 0.0;
};

UsageStats collect_stats(const std::vector<BlockRecord>& blocks);

}  // namespace i2i::codec
