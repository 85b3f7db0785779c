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
#include <random>

#include "fixtures.hpp"
#include "i2i/error.hpp"
#include "i2i/lifting_designer.hpp"

using namespace i2i;
using namespace i2i::lift;
using testing::near;

namespace {

constexpr LiftType kTwoLift[] = {LiftType::Type1, LiftType::Type2, LiftType::Type3, LiftType::Type4};

Matrix rot2(double a) { return rot::rotation_matrix({1, 2, a}, 2).entries; }

Matrix swap_rows(Matrix m) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(0, c), m(1, c));
    return m;
}

double product(const std::vector<double>& v) {
    double p = 1.0;
    for (double x : v) p *= x;
    return p;
}

}  // namespace

TEST_CASE("three-lift parameters") {
    const auto a = decompose_three_lift(std::numbers::pi / 6);
    CHECK(near(a.first, -0.267949, 1e-6));
    CHECK(near(a.second, 0.5, 1e-15));
    const auto b = decompose_three_lift(std::numbers::pi / 4);
    CHECK(near(b.first, 1.0 - std::sqrt(2.0), 1e-15));
    CHECK(near(b.second, std::sqrt(0.5), 1e-15));
    CHECK_THROWS_AS(decompose_three_lift(0.0), SingularAngle);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(0.01, 1.56);
    for (int t = 0; t < 1000; ++t) {
        const double alpha = ang(rng);
        CHECK(max_abs_diff(decompose_three_lift(alpha).local_matrix(), rot2(alpha)) < 1e-12);
    }
}

TEST_CASE("two-lift parameters") {
    const auto t1 = decompose_two_lift(std::numbers::pi / 6, LiftType::Type1);
    CHECK(near(t1.first, 0.577350, 1e-6));
    CHECK(near(t1.second, -0.433013, 1e-6));
    CHECK(near(t1.k1, 0.866025, 1e-6));
    CHECK(near(t1.k2, 1.154701, 1e-6));
    const auto t3 = decompose_two_lift(std::numbers::pi / 4, LiftType::Type3);
    CHECK(near(t3.first, -1.0, 1e-15));
    CHECK(near(t3.second, 0.5, 1e-15));
    CHECK(near(t3.k2, -std::sqrt(0.5), 1e-15));
    CHECK(near(t3.k1, std::sqrt(2.0), 1e-15));
    CHECK_THROWS_AS(decompose_two_lift(std::numbers::pi / 2, LiftType::Type1), SingularAngle);
    CHECK_THROWS_AS(decompose_two_lift(0.0, LiftType::Type4), SingularAngle);
}

TEST_CASE("all decompositions reproduce the rotation") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ang(0.01, 1.56);
    for (int t = 0; t < 1000; ++t) {
        const double alpha = ang(rng);
        for (LiftType type : kTwoLift) {
            const auto d = decompose_two_lift(alpha, type);
            CHECK(max_abs_diff(d.local_matrix(), rot2(alpha)) < 1e-12);
            // Without the final swap, types 3 and 4 deliver the outputs crosswise.
            if (d.permutes_outputs) {
                auto plain = d;
                plain.permutes_outputs = false;
                std::swap(plain.k1, plain.k2);
                CHECK(max_abs_diff(swap_rows(plain.local_matrix()), rot2(alpha)) < 1e-12);
            }
        }
    }
}

TEST_CASE("scaling commutation") {
    const LiftingStep s{0, 1, 0.7};
    CHECK(commute_scaling(s, 1.3, 1.3).param == doctest::Approx(0.7));
    CHECK(commute_scaling({0, 1, 0.5}, 2.0, 0.5).param == doctest::Approx(2.0));
    CHECK_THROWS_AS(commute_scaling(s, 0.0, 1.0), InvalidArgument);

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 200; ++t) {
        const double p = u(rng), ka = u(rng) + 3.0, kb = u(rng) - 3.0;
        // scale then lift
        Matrix a(2, 2);
        a(0, 0) = ka;
        a(1, 1) = kb;
        a(1, 0) = p * ka;
        // lift with commuted parameter, then scale
        const double pt = commute_scaling({0, 1, p}, ka, kb).param;
        Matrix b(2, 2);
        b(0, 0) = ka;
        b(1, 1) = kb;
        b(1, 0) = kb * pt;
        CHECK(max_abs_diff(a, b) < 1e-12);
    }
}

TEST_CASE("cascade to lifting") {
    rot::RotationCascade single{2, {{1, 2, 0.4}}, {}, {}, {}};
    const auto net = cascade_to_lifting(single, {LiftType::Type1});
    CHECK(net.steps.size() == 2);
    CHECK(net.output_permutation == std::vector<int>{0, 1});
    CHECK(near(net.branch_scales[0], std::cos(0.4), 1e-15));
    CHECK(near(net.branch_scales[1], 1.0 / std::cos(0.4), 1e-15));

    const auto& c4 = testing::aodst4();
    const Matrix target = rot::cascade_matrix(c4).entries;
    std::mt19937_64 rng(14);
    for (int t = 0; t < 100; ++t) {
        std::vector<LiftType> combo;
        for (std::size_t k = 0; k < c4.rotations.size(); ++k) combo.push_back(kTwoLift[rng() % 4]);
        const auto n = cascade_to_lifting(c4, combo);
        CHECK(max_abs_diff(n.matrix(true), target) < 1e-12);
        CHECK(near(std::abs(product(n.branch_scales)), 1.0, 1e-9));
        CHECK(near(std::abs(determinant(n.matrix(false))), 1.0, 1e-12));
    }

    // Signed output map path.
    const auto e8 = rot::edst3_rotation_factorization(8);
    std::vector<LiftType> combo(e8.rotations.size(), LiftType::Type2);
    CHECK(max_abs_diff(cascade_to_lifting(e8, combo).matrix(true), math::edst3_matrix(8).entries) < 1e-9);
    CHECK_THROWS_AS(cascade_to_lifting(c4, {LiftType::Type1}), InvalidArgument);
}

TEST_CASE("parameter quantization") {
    CHECK(quantize_param(0.4142, 3) == 3);
    CHECK(quantize_param(-0.4142, 3) == -3);
    CHECK(quantize_param(0.625, 3) == 5);
    CHECK(quantize_param(-1.25, 2) == -5);
    CHECK_THROWS_AS(quantize_param(0.5, -1), InvalidArgument);
}

TEST_CASE("design selection at l = 3") {
    const auto& c4 = testing::aodst4();
    const auto d = select_design(c4, 3);
    const double expected[] = {-1.1644, -0.9013, 0.8400, 1.1344};
    // Per physical branch, as drawn at the end of the flow graph.
    const auto& b = d.quantized.branch_scales;
    for (std::size_t i = 0; i < 4; ++i) CHECK(near(b[i], expected[i], 0.02));
    CHECK(near(std::abs(product(d.quantized.branch_scales)), 1.0, 1e-9));
    CHECK(near(d.gain.relative(), -0.0158, 0.005));
    for (double x : b) CHECK((std::abs(x) >= 0.84 - 1e-4 && std::abs(x) <= 1.17));
    CHECK(parameters_in_range(d.quantized));
}

TEST_CASE("quantized gain across precisions") {
    const auto& k = testing::k4();
    const auto& c4 = testing::aodst4();
    const auto combo = select_design(c4, 3).combo;
    const auto net = cascade_to_lifting(c4, combo);
    auto gain_at = [&](int l) { return lifting_coding_gain(quantize_network(net, l), k).relative(); };
    CHECK(near(gain_at(1), -1.0565, 0.02));
    CHECK(near(gain_at(2), -0.0973, 0.01));
    CHECK(near(gain_at(8), -0.0059, 0.002));
    CHECK(near(gain_at(40), c4.gain->relative(), 1e-6));
    CHECK(gain_at(3) - gain_at(2) >= 0.05);
}

TEST_CASE("single rotation at pi/4 ties across types") {
    rot::RotationCascade single{2, {{1, 2, std::numbers::pi / 4}}, {}, {}, {}};
    const auto k2 = math::residual_autocorrelation(0.95, 2);
    std::vector<double> gains;
    for (LiftType t : kTwoLift)
        gains.push_back(lifting_coding_gain(quantize_network(cascade_to_lifting(single, {t}), 4), k2).value);
    for (double g : gains) CHECK(near(g, gains[0], 1e-9));
    const auto d = select_design(single, 4, {0.005, 0.95});
    CHECK(near(scale_score(d.network.branch_scales), std::abs(std::log(std::sqrt(0.5))), 1e-12));
}

TEST_CASE("eight-point design") {
    const auto k8 = math::residual_autocorrelation(0.95, 8);
    const auto d = select_design(rot::edst3_rotation_factorization(8), 8);
    const double exact = math::coding_gain(math::edst3_matrix(8), k8).value;
    CHECK(near(lifting_coding_gain(d.quantized, k8).value, exact, 0.001));
}

TEST_CASE("integer DCT network") {
    const auto q = dct4_lifting_network();
    CHECK(near(std::abs(determinant(q.matrix())), 1.0, 1e-12));
    const Matrix m = q.matrix();
    for (std::size_t c = 0; c < 4; ++c) CHECK(near(m(0, c), 0.25, 1e-12));
    const auto& k = testing::k4();
    const double dct = math::coding_gain(math::dct2_matrix(4), k).value;
    CHECK(near(lifting_coding_gain(q, k).value, dct, 0.05));
}

TEST_CASE("output ordering by variance") {
    const auto& k = testing::k4();
    const auto q = order_outputs_by_variance(select_design(testing::aodst4(), 3).quantized, k);
    const auto var = congruence_diagonal(q.matrix(), k.matrix());
    for (std::size_t i = 1; i < var.size(); ++i) CHECK(var[i - 1] >= var[i]);
}

TEST_CASE("network text round trip") {
    const auto q = select_design(testing::aodst4(), 3).quantized;
    const auto back = parse_network(serialize_network(q));
    CHECK(back.n == q.n);
    CHECK(back.l == q.l);
    CHECK(back.output_permutation == q.output_permutation);
    REQUIRE(back.steps.size() == q.steps.size());
    for (std::size_t i = 0; i < q.steps.size(); ++i) {
        CHECK(back.steps[i].src == q.steps[i].src);
        CHECK(back.steps[i].dst == q.steps[i].dst);
        CHECK(back.steps[i].k == q.steps[i].k);
    }
    for (std::size_t i = 0; i < q.n; ++i) CHECK(back.branch_scales[i] == q.branch_scales[i]);
    CHECK_THROWS_AS(parse_network("4 3 1\n1 1 2\n"), FormatError);
    CHECK_THROWS_AS(parse_network("4 3 1\n1 5 2\n1 2 3 4\n1 1 1 1\n"), FormatError);
    CHECK_THROWS_AS(parse_network(""), FormatError);
}
