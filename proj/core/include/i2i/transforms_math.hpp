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
#include <string_view>
#include <vector>

#include "i2i/matrix.hpp"

namespace i2i::math {

/// Correlation of a block-based spatial prediction residual.
///
/// Pixels along a row follow a stationary first-order Markov process
/// u(i) = rho * u(i-1) + w(i) with unit variance and white innovations of
/// variance 1 - rho^2. The block is predicted by copying the boundary pixel
/// u(0), so the residual r(i) = u(i) - u(0), i = 1..n, has correlation
///
///     E[r(i) r(j)] = rho^|i-j| - rho^i - rho^j + 1.
///
/// Instances are produced by residual_autocorrelation() and are immutable.
class CorrelationModel {
public:
    double rho() const noexcept { return rho_; }
    std::size_t size() const noexcept { return matrix_.rows(); }
    const Matrix& matrix() const noexcept { return matrix_; }
    // Variance of the underlying Markov samples u(i); fixed to 1.
    double process_variance() const noexcept { return 1.0; }

    // Wraps an arbitrary symmetric positive semi-definite matrix (tests, KLT of
    // custom statistics). rho is recorded as NaN.
    static CorrelationModel from_matrix(Matrix k);

private:
    friend CorrelationModel residual_autocorrelation(double rho, std::size_t n);
    CorrelationModel(double rho, Matrix m) : rho_(rho), matrix_(std::move(m)) {}

    double rho_;
    Matrix matrix_;
};

enum class TransformKind { ODST3, EDST3, DCT2, KLT, DPCM, Cascade, Lifting };

std::string_view to_string(TransformKind kind);

/// Analysis matrix: row m is the m-th basis function, y = T x.
struct TransformMatrix {
    TransformKind kind;
    Matrix entries;

    std::size_t size() const noexcept { return entries.rows(); }
};

/// Coding gain in dB, optionally relative to another gain (usually the KLT's).
struct CodingGainDb {
    double value = 0.0;
    std::optional<double> reference;

    double relative() const noexcept { return reference ? value - *reference : value; }
    CodingGainDb relative_to(double ref) const { return {value, ref}; }
};

CorrelationModel residual_autocorrelation(double rho, std::size_t n);

// Entrywise limit of residual_autocorrelation as rho -> 1: K[i][j] = min(i, j), 1-based.
Matrix limit_correlation_matrix(std::size_t n);

TransformMatrix odst3_matrix(std::size_t n);
TransformMatrix edst3_matrix(std::size_t n);
TransformMatrix dct2_matrix(std::size_t n);

// First-order DPCM along the block: d(1) = r(1), d(i) = r(i) - r(i-1).
TransformMatrix dpcm_matrix(std::size_t n);

/// Eigenvectors of a symmetric matrix as rows, sorted by descending
/// eigenvalue. Each row is signed so its largest-magnitude entry (first one on
/// ties) is positive. Cyclic Jacobi; exact enough for n <= 32.
TransformMatrix klt_matrix(const CorrelationModel& k);
TransformMatrix klt_matrix(const Matrix& symmetric);

// Eigenvalues in descending order, from the same Jacobi sweep as klt_matrix.
std::vector<double> symmetric_eigenvalues(const Matrix& symmetric);

/// 10 log10( GM(diag K) / GM(diag(T K T^T)) ).
///
/// Throws DegenerateTransform if any coefficient variance is not positive.
CodingGainDb coding_gain(const Matrix& t, const CorrelationModel& k);
inline CodingGainDb coding_gain(const TransformMatrix& t, const CorrelationModel& k) {
    return coding_gain(t.entries, k);
}

/// Same figure of merit but with the unit variance of the Markov process as the
/// numerator: 10 log10( sigma_u^2 / GM(diag(T K T^T)) ). Differences between
/// transforms are identical to coding_gain(); this is the absolute scale on
/// which the KLT of K(0.95, 4) sits at 10.0039 dB.
CodingGainDb process_referenced_gain(const Matrix& t, const CorrelationModel& k);

/// Draws `count` residual vectors of length n from the stationary Markov model
/// (u(0) from the stationary unit-variance law). Output is row-major,
/// count x n. Deterministic for a given seed.
std::vector<double> synthesize_markov_residual(double rho, std::size_t n, std::size_t count,
                                               std::uint64_t seed);

// Sample second-moment matrix of row-major vectors (zero mean assumed).
Matrix sample_correlation(const std::vector<double>& rows, std::size_t n);

}  // namespace i2i::math
