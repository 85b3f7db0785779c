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

// Published reference figures the table reproductions are checked against.
// All gains are in dB relative to the KLT at rho = 0.95 unless noted.
// Version 1.
namespace i2i::reference {

inline constexpr int kVersion = 1;
inline constexpr double kRho = 0.95;

// Absolute KLT gain, K(0.95, 4), unit-variance process.
inline constexpr double kKltAbsolute4 = 10.0039;
inline constexpr double kKltAbsoluteTolerance = 0.0005;

// 4-point transforms.
inline constexpr double kDct4 = -0.6211;
inline constexpr double kOdst4 = -0.0009;
// Rotation cascades of L = 2..5 rotations.
inline constexpr std::array<double, 4> kCascade4 = {-0.7593, -0.1023, -0.0059, -0.0001};
inline constexpr double kCascadeTolerance = 0.005;
// Four rotations constrained to parallel stages.
inline constexpr double kParallelCascade4 = -0.1206;

// Lifting design at l = 1..8 (scales omitted).
inline constexpr std::array<double, 8> kLifting4 = {-1.0565, -0.0973, -0.0158, -0.0165,
                                                    -0.0104, -0.0056, -0.0060, -0.0059};
inline constexpr double kLiftingTolerance = 0.01;
// Branch scales of the l = 3 design.
inline constexpr std::array<double, 4> kBranchScales4 = {-1.1644, -0.9013, 0.8400, 1.1344};
inline constexpr double kBranchScaleTolerance = 0.02;

// First-order DPCM on K(0.95, 4).
inline constexpr double kDpcm4 = -0.0039;

// Block sizes 4, 8, 16, 32.
inline constexpr std::array<int, 4> kSizes = {4, 8, 16, 32};
inline constexpr std::array<double, 4> kOdst = {-0.0009, -0.0024, -0.0045, -0.0072};
inline constexpr std::array<double, 4> kEdst = {-0.2174, -0.1376, -0.0797, -0.0468};
inline constexpr std::array<double, 4> kDct = {-0.6211, -0.5611, -0.4108, -0.2640};
inline constexpr double kSizeTableTolerance = 0.0005;

// Quantized 8-point EDST (l = 8) against the exact EDST.
inline constexpr double kEdst8QuantizationLoss = 0.0001;
inline constexpr double kEdst8Tolerance = 0.001;

// Average bitrate savings (%) over HEVCV1 for HEVCV2, I2IDST4, I2IDST4_RDPCM,
// I2IDST4_8, I2IDST4_8_RDPCM, measured with CABAC; not reproducible with the
// Rice coder here, listed for orientation only.
inline constexpr std::array<double, 5> kSavingsPercent = {6.4, 8.3, 8.9, 8.2, 9.1};

}  // namespace i2i::reference
