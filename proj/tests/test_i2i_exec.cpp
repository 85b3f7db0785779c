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

#include <random>

#include "fixtures.hpp"
#include "i2i/error.hpp"
#include "i2i/i2i_exec.hpp"

using namespace i2i;
using namespace i2i::exec;
using testing::near;

namespace {

const I2ITransform& aodst4_l3() {
    static const I2ITransform t(lift::select_design(testing::aodst4(), 3).quantized);
    return t;
}

const I2ITransform& edst8_l8() {
    static const I2ITransform t(lift::select_design(rot::edst3_rotation_factorization(8), 8).quantized);
    return t;
}

ResidualBlock random_block(int n, std::mt19937_64& rng, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    ResidualBlock b(n, n);
    for (auto& v : b.samples) v = d(rng);
    return b;
}

}  // namespace

TEST_CASE("zero maps to zero") {
    const std::vector<std::int32_t> z(4, 0);
    CHECK(aodst4_l3().forward(z) == z);
    CHECK(aodst4_l3().inverse(z) == z);
}

TEST_CASE("exhaustive small-range reconstruction") {
    const auto r = self_test(aodst4_l3(), 2);
    CHECK(r.cases == 625);
    CHECK(r.failures == 0);
    CHECK(self_test(I2ITransform(lift::dct4_lifting_network()), 2).passed());
}

TEST_CASE("random 1-D reconstruction") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> d(-255, 255);
    std::vector<std::int32_t> x4(4), x8(8);
    int failures = 0;
    for (int t = 0; t < 1000000; ++t) {
        for (auto& v : x4) v = d(rng);
        failures += aodst4_l3().inverse(aodst4_l3().forward(x4)) != x4;
    }
    for (int t = 0; t < 100000; ++t) {
        for (auto& v : x8) v = d(rng);
        failures += edst8_l8().inverse(edst8_l8().forward(x8)) != x8;
        failures += edst8_l8().forward(edst8_l8().inverse(x8)) != x8;
    }
    CHECK(failures == 0);
}

TEST_CASE("2-D reconstruction") {
    std::mt19937_64 rng(22);
    int failures = 0;
    for (int t = 0; t < 100000; ++t) {
        const auto b = random_block(4, rng, 255);
        failures += inverse_i2i_2d(aodst4_l3(), forward_i2i_2d(aodst4_l3(), b)) != b;
    }
    for (int t = 0; t < 10000; ++t) {
        const auto b = random_block(8, rng, 255);
        failures += inverse_i2i_2d(edst8_l8(), forward_i2i_2d(edst8_l8(), b)) != b;
    }
    CHECK(failures == 0);
    CHECK_THROWS_AS(forward_i2i_2d(aodst4_l3(), ResidualBlock(8, 8)), InvalidArgument);
}

TEST_CASE("flat block through the integer DCT") {
    const I2ITransform dct(lift::dct4_lifting_network());
    for (int c : {-255, -7, 0, 1, 100, 255}) {
        ResidualBlock b(4, 4);
        for (auto& v : b.samples) v = c;
        const auto y = forward_i2i_2d(dct, b);
        CHECK(y.at(0, 0) == c);
        for (std::size_t i = 1; i < y.samples.size(); ++i) CHECK(y.samples[i] == 0);
    }
}

TEST_CASE("output variance follows the network matrix") {
    const auto& k = testing::k4();
    const auto rows = math::synthesize_markov_residual(0.95, 4, 200000, 23);
    // Scale up so rounding noise is negligible against the signal.
    std::vector<double> acc(4, 0.0);
    std::vector<std::int32_t> x(4);
    for (std::size_t t = 0; t < 200000; ++t) {
        for (std::size_t i = 0; i < 4; ++i) x[i] = static_cast<std::int32_t>(std::lround(rows[t * 4 + i] * 1000.0));
        const auto y = aodst4_l3().forward(x);
        for (std::size_t i = 0; i < 4; ++i) acc[i] += static_cast<double>(y[i]) * y[i];
    }
    const auto expected = congruence_diagonal(aodst4_l3().network().matrix(), k.matrix());
    for (std::size_t i = 0; i < 4; ++i) CHECK(near(acc[i] / 200000.0 / 1e6, expected[i], 0.02 * expected[i]));
}

TEST_CASE("range checks") {
    std::vector<std::int32_t> big(4, kMaxInput + 1);
    CHECK_THROWS_AS(aodst4_l3().forward(big), OverflowError);
    CHECK_THROWS_AS(aodst4_l3().forward(std::vector<std::int32_t>(3, 0)), InvalidArgument);
    // 8-bit residuals fit comfortably in 16 bits after the transform.
    for (auto b : aodst4_l3().output_bound(255)) CHECK(b < 32768);
    for (auto b : edst8_l8().output_bound(255)) CHECK(b < 32768);

    auto bad = lift::dct4_lifting_network();
    bad.output_permutation = {0, 0, 1, 2};
    CHECK_THROWS_AS(I2ITransform{bad}, InvalidArgument);
    bad = lift::dct4_lifting_network();
    bad.l = 30;
    CHECK_THROWS_AS(I2ITransform{bad}, InvalidArgument);
}

TEST_CASE("RDPCM") {
    ResidualBlock row(4, 1);
    row.samples = {5, 7, 6, 6};
    CHECK(rdpcm_forward(row, RdpcmDirection::Horizontal).samples == std::vector<std::int32_t>{5, 2, -1, 0});

    ResidualBlock flat(4, 4);
    for (auto& v : flat.samples) v = 9;
    const auto h = rdpcm_forward(flat, RdpcmDirection::Horizontal);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(h.at(r, c) == (c == 0 ? 9 : 0));

    std::mt19937_64 rng(24);
    int failures = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto b = random_block(8, rng, 255);
        for (auto dir : {RdpcmDirection::Horizontal, RdpcmDirection::Vertical})
            failures += rdpcm_inverse(rdpcm_forward(b, dir), dir) != b;
    }
    CHECK(failures == 0);
}
