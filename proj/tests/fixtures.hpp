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

#include "i2i/rotation_optimizer.hpp"
#include "i2i/transforms_math.hpp"

#include <cmath>

namespace i2i::testing {

// Absolute-tolerance comparison; doctest::Approx is relative.
inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline const math::CorrelationModel& k4() {
    static const math::CorrelationModel k = math::residual_autocorrelation(0.95, 4);
    return k;
}

inline double klt_gain(const math::CorrelationModel& k) {
    return math::coding_gain(math::klt_matrix(k), k).value;
}

// Searched 4-rotation cascade, computed once per test binary.
inline const rot::RotationCascade& aodst4() {
    static const rot::RotationCascade c = rot::search_cascade(4, 4, k4(), rot::OptimizerConfig{});
    return c;
}

}  // namespace i2i::testing
