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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "i2i/matrix.hpp"
#include "i2i/transforms_math.hpp"

namespace i2i::rot {

// Givens rotation on branches i and j (1-based). Row i of the embedded matrix
// is (cos, sin) on (i, j), row j is (-sin, cos). The orientation (which index
// comes first) carries the sign of the angle, so alpha stays in [0, pi/2).
struct PlaneRotation {
    int i = 1;
    int j = 2;
    double alpha = 0.0;

    friend bool operator==(const PlaneRotation&, const PlaneRotation&) = default;
};

// Unordered branch pair used by the discrete search; always i < j (1-based).
struct BranchPair {
    int i = 1;
    int j = 2;

    friend bool operator==(const BranchPair&, const BranchPair&) = default;
    friend auto operator<=>(const BranchPair&, const BranchPair&) = default;
};

// Ordered product of rotations, rotation 0 applied first to the signal.
// Optionally followed by a signed output permutation: output m is
// output_sign[m] times physical branch output_order[m] (both 0-based). Empty
// vectors mean identity / all positive.
struct RotationCascade {
    std::size_t n = 0;
    std::vector<PlaneRotation> rotations;
    std::vector<int> output_order;
    std::vector<int> output_sign;
    std::optional<math::CodingGainDb> gain;

    std::vector<BranchPair> pairs() const;
};

struct OptimizerConfig {
    bool parallel_only = false;
    bool greedy = false;
    int restarts = 32;
    double angle_tolerance = 1e-9;
    std::uint64_t seed = 1;
    // Exhaustive enumeration refuses spaces larger than this many branch-pair sequences.
    double max_search_points = 1e5;
    // Cascades whose gains differ by less than this are ranked by the lexicographic rule.
    double tie_tolerance_db = 1e-7;
};

struct AngleFit {
    std::vector<PlaneRotation> rotations;
    std::vector<double> signed_angles;  // per pair, in (-pi/2, pi/2)
    math::CodingGainDb gain;
};

math::TransformMatrix rotation_matrix(const PlaneRotation& rot, std::size_t n);
math::TransformMatrix cascade_matrix(const RotationCascade& cascade);

// Converts a signed angle on a canonical pair into an oriented rotation.
PlaneRotation orient(BranchPair pair, double signed_angle);

// Multi-start local maximization of the coding gain over the angles of a fixed
// pair sequence. Returned gain is relative to the KLT of k.
AngleFit optimize_angles(const std::vector<BranchPair>& pairs, const math::CorrelationModel& k,
                         const OptimizerConfig& config);

// Exhaustive search over branch-pair sequences (n <= 4) with optimized angles,
// or the stage-by-stage greedy variant when config.greedy is set.
RotationCascade search_cascade(std::size_t n, std::size_t L, const math::CorrelationModel& k,
                               const OptimizerConfig& config);

// True when the sequence splits into consecutive stages of n/2 (the last one
// possibly shorter) mutually disjoint pairs.
bool stage_groupable(const std::vector<BranchPair>& pairs, std::size_t n);

// Pair sequences visited by search_cascade for (n, L, parallel_only).
std::vector<std::vector<BranchPair>> enumerate_pair_sequences(std::size_t n, std::size_t L,
                                                              bool parallel_only);

// Rotation-only flow graph for the EDST-3 of size n (power of two, 4..32),
// built from the DCT-IV via a half-length complex FFT. Sign changes and
// quarter-turns are absorbed into the signed output permutation.
RotationCascade edst3_rotation_factorization(std::size_t n);

// Text format: "n L", then "k i j alpha" per rotation (1-based k), then
// optional "order ..." and "signs ..." lines for a non-trivial output map.
std::string serialize_cascade(const RotationCascade& cascade);
RotationCascade parse_cascade(const std::string& text);

}  // namespace i2i::rot
