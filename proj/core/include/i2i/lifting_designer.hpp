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
#include <string>
#include <vector>

#include "i2i/matrix.hpp"
#include "i2i/rotation_optimizer.hpp"
#include "i2i/transforms_math.hpp"

namespace i2i::lift {

enum class LiftType { ThreeLift, Type1, Type2, Type3, Type4 };

std::string to_string(LiftType t);

// One shear: branch dst += param * branch src. Branches are 0-based here and
// in every in-memory network; the text formats are 1-based.
struct LiftingStep {
    int src = 0;
    int dst = 1;
    double param = 0.0;
};

// Local decomposition of a rotation acting on (upper, lower) = (i, j) of
// P(i, j, alpha). Local step branches are 0 = upper, 1 = lower.
//
// Two-lift types carry (p, u) and the scales (K1, K2); three-lift carries
// (q, r) and no scales. For types 3 and 4 the outputs come out swapped: the
// upper branch then holds the rotation's lower output and is scaled by K2.
struct LiftDecomposition {
    LiftType type = LiftType::Type1;
    double first = 0.0;   // p, or q
    double second = 0.0;  // u, or r
    double k1 = 1.0;
    double k2 = 1.0;
    bool permutes_outputs = false;
    std::vector<LiftingStep> steps;

    double upper_scale() const { return permutes_outputs ? k2 : k1; }
    double lower_scale() const { return permutes_outputs ? k1 : k2; }
    // 2x2 matrix of steps then scales (then swap for types 3/4).
    Matrix local_matrix() const;
};

// Lifting steps in application order, followed by per-branch scales and an
// output permutation: output m = branch_scales[perm[m]] * branch perm[m].
struct LiftingNetwork {
    std::size_t n = 0;
    std::vector<LiftingStep> steps;
    std::vector<double> branch_scales;    // per physical branch
    std::vector<int> output_permutation;  // output m reads physical branch perm[m]

    Matrix matrix(bool with_scales = true) const;
};

struct QuantizedStep {
    int src = 0;
    int dst = 1;
    std::int64_t k = 0;
};

// Parameters are k / 2^l. Scales are kept as metadata only.
struct QuantizedLiftingNetwork {
    std::size_t n = 0;
    int l = 0;
    std::vector<QuantizedStep> steps;
    std::vector<int> output_permutation;
    std::vector<double> branch_scales;

    // Real matrix of the integer network (scales omitted).
    Matrix matrix() const;
};

LiftDecomposition decompose_three_lift(double alpha);
LiftDecomposition decompose_two_lift(double alpha, LiftType type);
LiftDecomposition decompose(double alpha, LiftType type);

// Moves scale K_a (on src) and K_b (on dst) from before a lifting step to after it.
LiftingStep commute_scaling(const LiftingStep& step, double scale_src, double scale_dst);

LiftingNetwork cascade_to_lifting(const rot::RotationCascade& cascade, const std::vector<LiftType>& combo);

// k = round(param * 2^l), half away from zero.
std::int64_t quantize_param(double param, int l);
QuantizedLiftingNetwork quantize_network(const LiftingNetwork& net, int l);

// Every |k| < 2^(l+4); larger values come from angles too close to a singularity.
bool parameters_in_range(const QuantizedLiftingNetwork& q);

math::CodingGainDb lifting_coding_gain(const QuantizedLiftingNetwork& q, const math::CorrelationModel& k);

// max_i |log |B_i||
double scale_score(const std::vector<double>& scales);

struct DesignOptions {
    // Combos within this many dB of the best quantized gain count as equally good.
    double gain_slack_db = 0.005;
    // Correlation parameter of the model the combos are ranked on.
    double rho = 0.95;
};

struct Design {
    std::vector<LiftType> combo;
    LiftingNetwork network;
    QuantizedLiftingNetwork quantized;
    math::CodingGainDb gain;  // quantized, relative to the KLT
};

// For L <= 8, enumerates the 4^L two-lift assignments, keeps those whose
// quantized gain lies within the slack of the best, and picks the
// least-scaled one; remaining ties prefer a scale product of +1, then higher
// gain, then the smaller combo. Longer cascades use coordinate descent on the
// orthogonality error of the scaled quantized transform.
Design select_design(const rot::RotationCascade& cascade, int l, const DesignOptions& options = {});

// Four-point integer DCT from the butterfly/rotation factorization with the
// butterflies replaced by lifting steps; the DC output is the block average.
QuantizedLiftingNetwork dct4_lifting_network();

// Reorders outputs by descending coefficient variance under k.
QuantizedLiftingNetwork order_outputs_by_variance(QuantizedLiftingNetwork q, const math::CorrelationModel& k);

// Text format: "n l num_steps", then "src dst k" per step, then the output
// permutation, then the branch scales. All branch numbers 1-based.
std::string serialize_network(const QuantizedLiftingNetwork& q);
QuantizedLiftingNetwork parse_network(const std::string& text);

}  // namespace i2i::lift
