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

#include "i2i/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "i2i/error.hpp"

namespace i2i {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: inner dimensions differ");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double v = a(r, k);
            if (v == 0.0) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += v * b(k, c);
        }
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

double orthogonality_error(const Matrix& a) {
    return max_abs_diff(a * a.transposed(), Matrix::identity(a.rows()));
}

double determinant(const Matrix& a) {
    if (!a.square()) throw InvalidArgument("determinant of a non-square matrix");
    Matrix lu = a;
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
        if (lu(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu(pivot, c), lu(col, c));
            det = -det;
        }
        det *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = lu(r, col) / lu(col, col);
            for (std::size_t c = col; c < n; ++c) lu(r, c) -= f * lu(col, c);
        }
    }
    return det;
}

std::vector<double> congruence_diagonal(const Matrix& a, const Matrix& k) {
    if (a.cols() != k.rows() || !k.square())
        throw InvalidArgument("congruence_diagonal: dimension mismatch");
    const std::size_t n = k.rows();
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto t = a.row(r);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i] == 0.0) continue;
            double inner = 0.0;
            for (std::size_t j = 0; j < n; ++j) inner += k(i, j) * t[j];
            acc += t[i] * inner;
        }
        out[r] = acc;
    }
    return out;
}

std::string format_matrix(const Matrix& m, int precision) {
    std::string out;
    char buf[64];
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.*g", precision, m(r, c));
            if (c) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace i2i
