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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "i2i/lifting_designer.hpp"
#include "i2i/rotation_optimizer.hpp"

namespace i2i::report {

struct TableRow {
    std::string label;
    double value = 0.0;
    std::optional<double> reference;
    double tolerance = 0.0;

    std::optional<double> delta() const {
        if (!reference) return std::nullopt;
        return value - *reference;
    }
    bool pass() const { return !reference || std::abs(value - *reference) <= tolerance + 1e-12; }
};

struct Table {
    std::string name;
    std::vector<TableRow> rows;

    bool pass() const;
    // label,value,reference,delta,tolerance,pass
    std::string to_csv() const;
    std::string to_text() const;
};

// Gains relative to the KLT on K(rho, 4): DCT, ODST-3 and searched cascades
// with L in [l_min, l_max]. References only apply at rho = 0.95.
Table rotation_table(double rho, std::size_t l_min, std::size_t l_max, bool parallel_only,
                     const rot::OptimizerConfig& config = {});

// Lossless gain of the lifting design at precisions l_min..l_max. The type
// assignment is selected once at `select_at` and kept for every row.
Table quantization_table(double rho, int l_min, int l_max, int select_at = 3);

// ODST-3, EDST-3 and DCT against the KLT for each block size.
Table block_size_table(double rho, const std::vector<std::size_t>& sizes);

// Absolute KLT gain on the unit-variance scale.
Table klt_absolute_table(double rho);

struct DesignReport {
    rot::RotationCascade cascade;
    lift::Design design;
    double exact_gain = 0.0;      // relative to the KLT, before quantization
    double quantized_gain = 0.0;  // relative to the KLT
    std::string text() const;
};

// n = 4: searched cascade of L rotations; n = 8: EDST-3 factorization (L ignored).
// Outputs are reordered by descending variance.
DesignReport design_pipeline(std::size_t n, std::size_t L, int l, double rho, const rot::OptimizerConfig& config = {});

}  // namespace i2i::report
