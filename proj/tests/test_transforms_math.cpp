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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "i2i/error.hpp"
#include "i2i/transforms_math.hpp"

using namespace i2i;
using namespace i2i::math;

TEST_CASE("residual correlation entries") {
    const auto k = residual_autocorrelation(0.95, 4);
    CHECK(k.matrix()(0, 0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(k.matrix()(1, 1) == doctest::Approx(0.195).epsilon(1e-12));
    CHECK(k.matrix()(0, 1) == doctest::Approx(0.0975).epsilon(1e-12));

    const auto white = residual_autocorrelation(0.0, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(white.matrix()(i, j) == doctest::Approx(i == j ? 2.0 : 1.0));

    // K(rho) = 2 (1 - rho) min(i, j) + O((1 - rho)^2)
    const auto near_one = residual_autocorrelation(1.0 - 1e-9, 4);
    const Matrix lim = limit_correlation_matrix(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(lim(i, j) == static_cast<double>(std::min(i, j) + 1));
            CHECK(std::round(near_one.matrix()(i, j) / (2.0 * 1e-9)) == lim(i, j));
        }
}

TEST_CASE("residual correlation rejects bad input") {
    CHECK_THROWS_AS(residual_autocorrelation(1.0, 4), InvalidArgument);
    CHECK_THROWS_AS(residual_autocorrelation(-0.1, 4), InvalidArgument);
    CHECK_THROWS_AS(residual_autocorrelation(0.5, 0), InvalidArgument);
}

TEST_CASE("limit matrix small sizes") {
    CHECK(limit_correlation_matrix(1)(0, 0) == 1.0);
    const Matrix m2 = limit_correlation_matrix(2);
    CHECK(m2(0, 0) == 1.0);
    CHECK(m2(0, 1) == 1.0);
    CHECK(m2(1, 0) == 1.0);
    CHECK(m2(1, 1) == 2.0);
}

TEST_CASE("sinusoidal bases") {
    CHECK(odst3_matrix(4).entries(0, 0) == doctest::Approx(2.0 / 3.0 * std::sin(std::numbers::pi / 9)).epsilon(1e-12));
    CHECK(edst3_matrix(4).entries(0, 0) == doctest::Approx(std::sqrt(0.5) * std::sin(std::numbers::pi / 16)).epsilon(1e-12));
    CHECK(odst3_matrix(4).entries(0, 0) == doctest::Approx(0.228013).epsilon(1e-5));
    CHECK(edst3_matrix(4).entries(0, 0) == doctest::Approx(0.137950).epsilon(1e-5));
    for (std::size_t n : {2u, 3u, 4u, 8u, 16u, 32u}) {
        CHECK(orthogonality_error(odst3_matrix(n).entries) < 1e-12);
        CHECK(orthogonality_error(edst3_matrix(n).entries) < 1e-12);
        CHECK(orthogonality_error(dct2_matrix(n).entries) < 1e-12);
    }
}

TEST_CASE("KLT conventions") {
    const auto id = klt_matrix(Matrix::identity(3));
    CHECK(max_abs_diff(id.entries, Matrix::identity(3)) < 1e-12);

    Matrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 4.0;
    const auto t = klt_matrix(d);
    CHECK(std::abs(t.entries(0, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(t.entries(1, 0)) == doctest::Approx(1.0));

    const auto& k = testing::k4();
    const auto klt = klt_matrix(k);
    CHECK(orthogonality_error(klt.entries) < 1e-12);
    const auto var = congruence_diagonal(klt.entries, k.matrix());
    for (std::size_t i = 1; i < var.size(); ++i) CHECK(var[i - 1] >= var[i]);
    // Diagonalizes K.
    const Matrix c = klt.entries * k.matrix() * klt.entries.transposed();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(c(i, j)) < 1e-12);
}

TEST_CASE("coding gains") {
    const auto& k = testing::k4();
    const double klt = testing::klt_gain(k);
    CHECK(testing::near(process_referenced_gain(klt_matrix(k).entries, k).value, 10.0039, 0.0005));
    CHECK(coding_gain(Matrix::identity(4), k).value == doctest::Approx(0.0));
    CHECK(testing::near(coding_gain(dct2_matrix(4), k).value - klt, -0.6211, 0.0005));
    CHECK(testing::near(coding_gain(odst3_matrix(4), k).value - klt, -0.0009, 0.0005));
    CHECK(testing::near(coding_gain(dpcm_matrix(4), k).value - klt, -0.0039, 0.0005));
    // The KLT is optimal among orthogonal transforms.
    for (std::size_t n : {4u, 8u, 16u}) {
        const auto kn = residual_autocorrelation(0.9, n);
        const double best = testing::klt_gain(kn);
        CHECK(coding_gain(odst3_matrix(n), kn).value <= best + 1e-12);
        CHECK(coding_gain(dct2_matrix(n), kn).value <= best + 1e-12);
    }
}

TEST_CASE("gain is invariant under row sign flips and permutations") {
    const auto& k = testing::k4();
    Matrix t = dct2_matrix(4).entries;
    const double g = coding_gain(t, k).value;
    Matrix u(4, 4);
    const int perm[] = {2, 0, 3, 1};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) u(r, c) = (r % 2 ? -1.0 : 1.0) * t(static_cast<std::size_t>(perm[r]), c);
    CHECK(coding_gain(u, k).value == doctest::Approx(g).epsilon(1e-12));
}

TEST_CASE("degenerate transform") {
    Matrix t(2, 2);
    t(0, 0) = 1.0;
    CHECK_THROWS_AS(coding_gain(t, residual_autocorrelation(0.9, 2)), DegenerateTransform);
}

TEST_CASE("Markov residual synthesis") {
    const auto rows = synthesize_markov_residual(0.95, 4, 1000000, 42);
    const Matrix s = sample_correlation(rows, 4);
    const Matrix& k = testing::k4().matrix();
    CHECK(max_abs_diff(s, k) < 0.01);

    const Matrix w = sample_correlation(synthesize_markov_residual(0.0, 4, 1000000, 7), 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(w(i, j) == doctest::Approx(i == j ? 2.0 : 1.0).epsilon(0.02));

    CHECK(synthesize_markov_residual(0.95, 4, 100, 3) == synthesize_markov_residual(0.95, 4, 100, 3));
    CHECK(synthesize_markov_residual(0.95, 4, 100, 3) != synthesize_markov_residual(0.95, 4, 100, 4));
}
