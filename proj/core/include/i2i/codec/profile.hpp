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

#include <optional>
#include <string>
#include <string_view>

namespace i2i::codec {

enum class CodecProfile { HEVCV1, HEVCV2, I2IDST4, I2IDST4_RDPCM, I2IDST4_8, I2IDST4_8_RDPCM };

inline constexpr CodecProfile kAllProfiles[] = {CodecProfile::HEVCV1,        CodecProfile::HEVCV2,
                                                CodecProfile::I2IDST4,       CodecProfile::I2IDST4_RDPCM,
                                                CodecProfile::I2IDST4_8,     CodecProfile::I2IDST4_8_RDPCM};

// Declaration order is also the tie-break order between paths.
enum class ResidualPath { Skip, RdpcmH, RdpcmV, I2IDst };

std::string_view to_string(CodecProfile p);
std::string_view to_string(ResidualPath p);
std::optional<CodecProfile> parse_profile(std::string_view name);

// The residual processing a profile applies to a block; it follows from the
// block size and intra mode alone, so it is never signaled.
ResidualPath residual_path(CodecProfile profile, int block_size, int mode);

}  // namespace i2i::codec
