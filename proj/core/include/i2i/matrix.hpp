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
#include <span>
#include <string>
#include <vector>

namespace i2i {

// Small dense row-major matrix of doubles. Only what the transform code needs;
// sizes here never exceed 32x32.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }

    Matrix transposed() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// max_ij |a_ij - b_ij|; infinity when the shapes differ.
double max_abs_diff(const Matrix& a, const Matrix& b);

// ||A A^T - I||_inf entrywise.
double orthogonality_error(const Matrix& a);

// LU with partial pivoting; returns 0 for singular input.
double determinant(const Matrix& a);

// diag(A K A^T) without forming the full product.
std::vector<double> congruence_diagonal(const Matrix& a, const Matrix& k);

// One row per line, space-separated decimals with `precision` significant digits.
std::string format_matrix(const Matrix& m, int precision = 10);

}  // namespace i2i
