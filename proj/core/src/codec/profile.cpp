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

#include "i2i/codec/profile.hpp"

#include "i2i/codec/intra.hpp"
#include "i2i/error.hpp"

namespace i2i::codec {

namespace {

// Row order: {4x4, 8x8, larger} x {hor/ver, other}. Column order follows CodecProfile.
constexpr ResidualPath S = ResidualPath::Skip;
constexpr ResidualPath R = ResidualPath::RdpcmH;  // resolved to H or V by the mode
constexpr ResidualPath T = ResidualPath::I2IDst;

constexpr ResidualPath kPolicy[6][6] = {
    // HEVCV1 HEVCV2 DST4 DST4+R DST4&8 DST4&8+R
    {S, R, T, R, T, R},  // 4x4 hor/ver
    {S, S, T, T, T, T},  // 4x4 other
    {S, R, R, R, T, R},  // 8x8 hor/ver
    {S, S, S, S, T, T},  // 8x8 other
    {S, R, R, R, R, R},  // larger hor/ver
    {S, S, S, S, S, S},  // larger other
};

}  // namespace

std::string_view to_string(CodecProfile p) {
    switch (p) {
        case CodecProfile::HEVCV1: return "HEVCV1";
        case CodecProfile::HEVCV2: return "HEVCV2";
        case CodecProfile::I2IDST4: return "I2IDST4";
        case CodecProfile::I2IDST4_RDPCM: return "I2IDST4_RDPCM";
        case CodecProfile::I2IDST4_8: return "I2IDST4_8";
        case CodecProfile::I2IDST4_8_RDPCM: return "I2IDST4_8_RDPCM";
    }
    return "?";
}

std::string_view to_string(ResidualPath p) {
    switch (p) {
        case ResidualPath::Skip: return "SKIP";
        case ResidualPath::RdpcmH: return "RDPCM_H";
        case ResidualPath::RdpcmV: return "RDPCM_V";
        case ResidualPath::I2IDst: return "I2I_DST";
    }
    return "?";
}

std::optional<CodecProfile> parse_profile(std::string_view name) {
    for (auto p : kAllProfiles)
        if (to_string(p) == name) return p;
    return std::nullopt;
}

ResidualPath residual_path(CodecProfile profile, int block_size, int mode) {
    if (mode < 0 || mode >= kNumIntraModes) throw InvalidArgument("intra mode out of range");
    int row;
    switch (block_size) {
        case 4: row = 0; break;
        case 8: row = 2; break;
        case 16:
        case 32: row = 4; break;
        default: throw InvalidArgument("unsupported block size " + std::to_string(block_size));
    }
    const bool hv = is_hor_ver(mode);
    const ResidualPath p = kPolicy[row + (hv ? 0 : 1)][static_cast<int>(profile)];
    if (p == ResidualPath::RdpcmH) return mode == kHorizontalMode ? ResidualPath::RdpcmH : ResidualPath::RdpcmV;
    return p;
}

}  // namespace i2i::codec
