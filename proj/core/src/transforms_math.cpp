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

#include "i2i/transforms_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "i2i/error.hpp"

namespace i2i::math {

namespace {

void require_size(std::size_t n, const char* what) {
    if (n == 0) throw InvalidArgument(std::string(what) + ": block length must be positive");
}

void require_rho(double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw InvalidArgument("correlation coefficient must lie in [0, 1), got " + std::to_string(rho));
}

bool is_symmetric(const Matrix& m, double tol = 1e-12) {
    if (!m.square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double scale = std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
            if (std::abs(m(i, j) - m(j, i)) > tol * scale) return false;
        }
    return true;
}

struct EigenSystem {
    std::vector<double> values;
    Matrix vectors;  // rows are eigenvectors
};

// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
EigenSystem jacobi_eigen(const Matrix& input) {
    const std::size_t n = input.rows();
    Matrix a = input;
    Matrix v = Matrix::identity(n);  // columns accumulate eigenvectors

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                total += a(i, j) * a(i, j);
                if (i != j) off += a(i, j) * a(i, j);
            }
        if (off <= 1e-30 * std::max(total, 1e-300)) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenSystem out{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t col = order[r];
        out.values[r] = a(col, col);
        std::size_t lead = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (std::abs(v(k, col)) > std::abs(v(lead, col)) + 1e-12) lead = k;
        const double sign = v(lead, col) < 0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) out.vectors(r, k) = sign * v(k, col);
    }
    return out;
}

double log_geometric_mean(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) acc += std::log(v);
    return acc / static_cast<double>(values.size());
}

std::vector<double> coefficient_variances(const Matrix& t, const CorrelationModel& k) {
    if (t.cols() != k.size() || t.rows() != k.size())
        throw InvalidArgument("coding gain: transform size " + std::to_string(t.rows()) + "x" +
                              std::to_string(t.cols()) + " does not match correlation size " +
                              std::to_string(k.size()));
    auto out = congruence_diagonal(t, k.matrix());
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!(out[i] > 0.0))
            throw DegenerateTransform("coefficient " + std::to_string(i) +
                                      " has non-positive variance");
    return out;
}

}  // namespace

std::string_view to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::ODST3: return "ODST-3";
        case TransformKind::EDST3: return "EDST-3";
        case TransformKind::DCT2: return "DCT";
        case TransformKind::KLT: return "KLT";
        case TransformKind::DPCM: return "DPCM";
        case TransformKind::Cascade: return "cascade";
        case TransformKind::Lifting: return "lifting";
    }
    return "?";
}

CorrelationModel CorrelationModel::from_matrix(Matrix k) {
    if (!is_symmetric(k)) throw InvalidArgument("correlation matrix must be symmetric");
    return CorrelationModel(std::numeric_limits<double>::quiet_NaN(), std::move(k));
}

CorrelationModel residual_autocorrelation(double rho, std::size_t n) {
    require_rho(rho);
    require_size(n, "residual_autocorrelation");
    Matrix k(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            const double dist = static_cast<double>(i > j ? i - j : j - i);
            k(i - 1, j - 1) = std::pow(rho, dist) - std::pow(rho, static_cast<double>(i)) -
                              std::pow(rho, static_cast<double>(j)) + 1.0;
        }
    return CorrelationModel(rho, std::move(k));
}

Matrix limit_correlation_matrix(std::size_t n) {
    require_size(n, "limit_correlation_matrix");
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = static_cast<double>(std::min(i, j) + 1);
    return k;
}

TransformMatrix odst3_matrix(std::size_t n) {
    require_size(n, "odst3_matrix");
    const double nn = static_cast<double>(n);
    const double scale = 2.0 / std::sqrt(2.0 * nn + 1.0);
    Matrix t(n, n);
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t k = 1; k <= n; ++k)
            t(m - 1, k - 1) = scale * std::sin((2.0 * m - 1.0) * k * std::numbers::pi / (2.0 * nn + 1.0));
    return {TransformKind::ODST3, std::move(t)};
}

TransformMatrix edst3_matrix(std::size_t n) {
    require_size(n, "edst3_matrix");
    const double nn = static_cast<double>(n);
    const double scale = std::sqrt(2.0 / nn);
    Matrix t(n, n);
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t k = 1; k <= n; ++k)
            t(m - 1, k - 1) =
                scale * std::sin((2.0 * m - 1.0) * (2.0 * k - 1.0) * std::numbers::pi / (4.0 * nn));
    return {TransformKind::EDST3, std::move(t)};
}

TransformMatrix dct2_matrix(std::size_t n) {
    require_size(n, "dct2_matrix");
    const double nn = static_cast<double>(n);
    Matrix t(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        const double scale = m == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
        for (std::size_t k = 0; k < n; ++k)
            t(m, k) = scale * std::cos(m * (2.0 * k + 1.0) * std::numbers::pi / (2.0 * nn));
    }
    return {TransformKind::DCT2, std::move(t)};
}

TransformMatrix dpcm_matrix(std::size_t n) {
    require_size(n, "dpcm_matrix");
    Matrix t = Matrix::identity(n);
    for (std::size_t i = 1; i < n; ++i) t(i, i - 1) = -1.0;
    return {TransformKind::DPCM, std::move(t)};
}

TransformMatrix klt_matrix(const Matrix& symmetric) {
    if (!is_symmetric(symmetric)) throw InvalidArgument("klt_matrix: input is not symmetric");
    return {TransformKind::KLT, jacobi_eigen(symmetric).vectors};
}

TransformMatrix klt_matrix(const CorrelationModel& k) { return klt_matrix(k.matrix()); }

std::vector<double> symmetric_eigenvalues(const Matrix& symmetric) {
    if (!is_symmetric(symmetric)) throw InvalidArgument("symmetric_eigenvalues: input is not symmetric");
    return jacobi_eigen(symmetric).values;
}

CodingGainDb coding_gain(const Matrix& t, const CorrelationModel& k) {
    const auto out = coefficient_variances(t, k);
    std::vector<double> in(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        in[i] = k.matrix()(i, i);
        if (!(in[i] > 0.0)) throw DegenerateTransform("input sample has non-positive variance");
    }
    return {10.0 * (log_geometric_mean(in) - log_geometric_mean(out)) / std::numbers::ln10, {}};
}

CodingGainDb process_referenced_gain(const Matrix& t, const CorrelationModel& k) {
    const auto out = coefficient_variances(t, k);
    return {10.0 * (std::log(k.process_variance()) - log_geometric_mean(out)) / std::numbers::ln10, {}};
}

std::vector<double> synthesize_markov_residual(double rho, std::size_t n, std::size_t count,
                                               std::uint64_t seed) {
    require_rho(rho);
    require_size(n, "synthesize_markov_residual");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double innovation = std::sqrt(1.0 - rho * rho);

    std::vector<double> out(n * count);
    for (std::size_t v = 0; v < count; ++v) {
        const double u0 = gauss(rng);
        double u = u0;
        for (std::size_t i = 0; i < n; ++i) {
            u = rho * u + innovation * gauss(rng);
            out[v * n + i] = u - u0;
        }
    }
    return out;
}

Matrix sample_correlation(const std::vector<double>& rows, std::size_t n) {
    require_size(n, "sample_correlation");
    if (rows.size() % n != 0 || rows.empty())
        throw InvalidArgument("sample_correlation: data is not a whole number of vectors");
    const std::size_t count = rows.size() / n;
    Matrix acc(n, n);
    for (std::size_t v = 0; v < count; ++v) {
        const double* x = rows.data() + v * n;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) acc(i, j) += x[i] * x[j];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            acc(i, j) /= static_cast<double>(count);
            acc(j, i) = acc(i, j);
        }
    return acc;
}

}  // namespace i2i::math
