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
#include <filesystem>
#include <random>

#include "fixtures.hpp"
#include "i2i/codec/codec.hpp"
#include "i2i/codec/entropy.hpp"
#include "i2i/error.hpp"

using namespace i2i;
using namespace i2i::codec;

namespace {

Frame random_frame(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Frame f(w, h);
    // Smooth gradient plus noise, so prediction has something to do.
    std::normal_distribution<double> noise(0.0, 6.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.at(x, y) = static_cast<std::uint8_t>(std::clamp(60.0 + 0.7 * x + 0.4 * y + noise(rng), 0.0, 255.0));
    return f;
}

std::vector<std::int32_t> predict(const Frame& f, int x, int y, int size, int mode) {
    const CausalLayout layout(f.width, f.height, 1 << kCtuLog2);
    std::vector<std::int32_t> out(static_cast<std::size_t>(size * size));
    intra_predict(gather_references({f.plane.data(), f.width, f.height}, layout, x, y, size), mode, out);
    return out;
}

std::size_t coded_bits(std::span<const std::int32_t> s) {
    BitWriter w;
    entropy_code_residual(s, w);
    return w.bit_count();
}

}  // namespace

TEST_CASE("policy table") {
    for (int size : {4, 8, 16, 32})
        for (int mode = 0; mode < kNumIntraModes; ++mode)
            CHECK(residual_path(CodecProfile::HEVCV1, size, mode) == ResidualPath::Skip);
    CHECK(residual_path(CodecProfile::HEVCV2, 16, kHorizontalMode) == ResidualPath::RdpcmH);
    CHECK(residual_path(CodecProfile::HEVCV2, 4, kVerticalMode) == ResidualPath::RdpcmV);
    CHECK(residual_path(CodecProfile::HEVCV2, 4, 7) == ResidualPath::Skip);
    CHECK(residual_path(CodecProfile::I2IDST4, 4, kHorizontalMode) == ResidualPath::I2IDst);
    CHECK(residual_path(CodecProfile::I2IDST4, 8, 3) == ResidualPath::Skip);
    CHECK(residual_path(CodecProfile::I2IDST4_RDPCM, 4, kVerticalMode) == ResidualPath::RdpcmV);
    CHECK(residual_path(CodecProfile::I2IDST4_RDPCM, 4, 0) == ResidualPath::I2IDst);
    CHECK(residual_path(CodecProfile::I2IDST4_8, 8, kHorizontalMode) == ResidualPath::I2IDst);
    CHECK(residual_path(CodecProfile::I2IDST4_8, 16, 2) == ResidualPath::Skip);
    CHECK(residual_path(CodecProfile::I2IDST4_8_RDPCM, 8, kHorizontalMode) == ResidualPath::RdpcmH);
    CHECK(residual_path(CodecProfile::I2IDST4_8_RDPCM, 8, 34) == ResidualPath::I2IDst);
    CHECK(residual_path(CodecProfile::I2IDST4_8_RDPCM, 32, 34) == ResidualPath::Skip);
    CHECK_THROWS_AS(residual_path(CodecProfile::HEVCV1, 64, 0), InvalidArgument);
    CHECK(parse_profile("I2IDST4_8_RDPCM") == CodecProfile::I2IDST4_8_RDPCM);
    CHECK_FALSE(parse_profile("HEVCV3").has_value());
}

TEST_CASE("intra prediction copy rules") {
    Frame f(16, 16);
    std::mt19937_64 rng(31);
    for (auto& v : f.plane) v = static_cast<std::uint8_t>(rng() % 256);
    const int x = 4, y = 4;
    const auto vert = predict(f, x, y, 4, kVerticalMode);
    const auto hor = predict(f, x, y, 4, kHorizontalMode);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            CHECK(vert[static_cast<std::size_t>(r * 4 + c)] == f.at(x + c, y - 1));
            CHECK(hor[static_cast<std::size_t>(r * 4 + c)] == f.at(x - 1, y + r));
        }

    Frame flat(16, 16, 93);
    for (int mode = 0; mode < kNumIntraModes; ++mode)
        for (auto v : predict(flat, 8, 8, 8, mode)) CHECK(v == 93);

    // No neighbours at all: mid-grey.
    for (auto v : predict(flat, 0, 0, 4, kDcMode)) CHECK(v == 128);
}

TEST_CASE("reference availability follows coding order") {
    const CausalLayout layout(64, 64, 32);
    CHECK(layout.available(3, 3, 4, 0));        // left neighbour, same CTU
    CHECK_FALSE(layout.available(4, 4, 0, 4));  // later in z-order
    CHECK(layout.available(4, 7, 0, 8));        // above-right inside the same quadrant
    CHECK(layout.available(8, 7, 4, 8));        // above-right quadrant precedes bottom-left
    CHECK_FALSE(layout.available(8, 3, 4, 4));  // above-right in a later quadrant
    CHECK(layout.available(40, 31, 28, 32));    // CTU row above
    CHECK_FALSE(layout.available(32, 0, 28, 0));  // next CTU
    CHECK_FALSE(layout.available(-1, 0, 0, 0));
}

TEST_CASE("Rice coding") {
    const std::vector<std::int32_t> zeros(16, 0);
    CHECK(coded_bits(zeros) <= 24);
    CHECK(residual_bits(zeros) == coded_bits(zeros));

    std::mt19937_64 rng(32);
    std::exponential_distribution<double> mag(0.1);
    std::vector<std::int32_t> block(16), back(16);
    int failures = 0, cost_mismatch = 0, doubling = 0;
    for (int t = 0; t < 1000000; ++t) {
        const double scale = t % 7 == 0 ? 20.0 : 1.0;
        for (auto& v : block) v = static_cast<std::int32_t>(std::lround(mag(rng) * scale)) * (rng() & 1 ? 1 : -1);
        BitWriter w;
        entropy_code_residual(block, w);
        cost_mismatch += w.bit_count() != residual_bits(block);
        const auto bytes = w.finish();
        BitReader r(bytes);
        entropy_decode_residual(r, back);
        failures += back != block;
        if (t % 10 == 0) {
            auto doubled = block;
            for (auto& v : doubled) v *= 2;
            doubling += residual_bits(doubled) < residual_bits(block);
        }
    }
    CHECK(failures == 0);
    CHECK(cost_mismatch == 0);
    CHECK(doubling == 0);

    const std::vector<std::uint8_t> empty;
    BitReader r(empty);
    CHECK_THROWS_AS(entropy_decode_residual(r, back), TruncatedStream);
}

TEST_CASE("block coding choices") {
    const ResidualCoder v1(CodecProfile::HEVCV1, default_networks());
    const ResidualCoder v2(CodecProfile::HEVCV2, default_networks());

    Frame flat(32, 32, 50);
    const CausalLayout layout(32, 32, 32);
    const PlaneView fv{flat.plane.data(), 32, 32};
    const auto c = choose_block_coding(fv, layout, 8, 8, 8, v1);
    for (auto v : c.coeffs) CHECK(v == 0);
    CHECK(c.bits == kModeBits + 1);

    // Rows with random offsets and a steep left-to-right ramp.
    Frame ramp(32, 32);
    std::mt19937_64 rng(33);
    for (int y = 0; y < 32; ++y) {
        const int offset = static_cast<int>(rng() % 60);
        for (int x = 0; x < 32; ++x) ramp.at(x, y) = static_cast<std::uint8_t>(offset + 6 * x);
    }
    const PlaneView rv{ramp.plane.data(), 32, 32};
    const auto a = choose_block_coding(rv, layout, 8, 8, 8, v1);
    const auto b = choose_block_coding(rv, layout, 8, 8, 8, v2);
    CHECK(b.path == ResidualPath::RdpcmH);
    CHECK(b.bits < a.bits);

    // Diagonal texture: the transform path is no worse than coding the residual directly.
    const ResidualCoder d(CodecProfile::I2IDST4_RDPCM, default_networks());
    Frame diag(32, 32);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            diag.at(x, y) = static_cast<std::uint8_t>(128 + 60 * std::sin(0.45 * (x + y)) + 3 * ((x * 7 + y * 13) % 5));
    const PlaneView dv{diag.plane.data(), 32, 32};
    const auto dst = choose_block_coding(dv, layout, 12, 12, 4, d);
    const auto skip = choose_block_coding(dv, layout, 12, 12, 4, v1);
    CHECK(dst.bits <= skip.bits);
}

TEST_CASE("round trip on every profile") {
    std::vector<Frame> frames;
    for (int i = 0; i < 6; ++i) frames.push_back(random_frame(20 + 13 * i, 17 + 9 * i, 100 + static_cast<std::uint64_t>(i)));
    frames.emplace_back(4, 4, 0);
    frames.emplace_back(37, 5, 255);
    for (const auto& f : frames)
        for (auto p : kAllProfiles) {
            const auto enc = encode_frame(f, p);
            const auto dec = decode_frame(enc.bytes);
            CHECK(dec.frame == f);
            CHECK(dec.profile == p);
            CHECK(audit_policy(p, dec.blocks) == 0);
            CHECK(dec.blocks.size() == enc.blocks.size());
        }
}

TEST_CASE("flat content") {
    const Frame c(64, 64, 77);
    for (auto p : kAllProfiles) CHECK(encode_frame(c, p).bytes.size() < 200);

    const auto s128 = collect_stats(encode_frame(Frame(64, 64, 128), CodecProfile::HEVCV2).blocks);
    CHECK(s128.size_share[3] == doctest::Approx(100.0));
    // Only the first CTU has nothing to predict from.
    const auto s77 = collect_stats(encode_frame(Frame(256, 256, 77), CodecProfile::HEVCV1).blocks);
    CHECK(s77.size_share[3] >= 95.0);
    double total = 0.0;
    for (double v : s77.size_share) total += v;
    CHECK(total == doctest::Approx(100.0));
    CHECK(s77.hor_ver_share + s77.other_share == doctest::Approx(100.0));
}

TEST_CASE("deterministic streams") {
    const auto f = random_frame(48, 40, 7);
    CHECK(encode_frame(f, CodecProfile::I2IDST4_8_RDPCM).bytes == encode_frame(f, CodecProfile::I2IDST4_8_RDPCM).bytes);
}

TEST_CASE("decoder errors") {
    const auto f = random_frame(24, 24, 8);
    const auto bytes = encode_frame(f, CodecProfile::I2IDST4_RDPCM).bytes;

    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_frame(bad), FormatError);
    bad = bytes;
    bad[4] = 9;
    CHECK_THROWS_AS(decode_frame(bad), FormatError);
    bad = bytes;
    bad.back() ^= 0x01;
    CHECK_THROWS_AS(decode_frame(bad), ChecksumMismatch);
    for (std::size_t len : {std::size_t{0}, std::size_t{10}, std::size_t{24}, bytes.size() - 1})
        CHECK_THROWS_AS(decode_frame(std::span(bytes).first(len)), TruncatedStream);
    bad = bytes;
    bad.push_back(0);
    CHECK_THROWS_AS(decode_frame(bad), FormatError);

    auto other = default_networks();
    other.dst4.steps[0].k += 1;
    CHECK_THROWS_AS(decode_frame(bytes, other), FormatError);

    // Every single-byte corruption is caught or yields the original frame.
    int silent = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i)
        for (std::uint8_t flip : {std::uint8_t{0x01}, std::uint8_t{0x80}, std::uint8_t{0xFF}}) {
            bad = bytes;
            bad[i] ^= flip;
            try {
                silent += decode_frame(bad).frame != f;
            } catch (const Error&) {
            }
        }
    CHECK(silent == 0);
}

TEST_CASE("PGM I/O") {
    const auto f = random_frame(9, 7, 9);
    CHECK(parse_pgm(format_pgm(f)) == f);
    const std::string commented = "P5\n# c\n4 4\n255\n" + std::string(16, 'a');
    CHECK(parse_pgm({reinterpret_cast<const std::uint8_t*>(commented.data()), commented.size()}).at(3, 3) == 'a');
    const std::string p2 = "P2\n4 4\n255\n";
    CHECK_THROWS_AS(parse_pgm({reinterpret_cast<const std::uint8_t*>(p2.data()), p2.size()}), FormatError);
    const std::string short_data = "P5\n4 4\n255\n" + std::string(15, 'a');
    CHECK_THROWS_AS(parse_pgm({reinterpret_cast<const std::uint8_t*>(short_data.data()), short_data.size()}),
                    FormatError);
    CHECK_THROWS_AS(read_pgm("/nonexistent/file.pgm"), IoError);
    CHECK_THROWS_AS(encode_frame(Frame(3, 8), CodecProfile::HEVCV1), InvalidArgument);
}

TEST_CASE("default networks match the design pipeline") {
    const auto& nets = default_networks();
    const auto& k4 = testing::k4();
    const auto k8 = math::residual_autocorrelation(0.95, 8);
    const auto q4 = lift::order_outputs_by_variance(lift::select_design(testing::aodst4(), 3).quantized, k4);
    const auto q8 = lift::order_outputs_by_variance(
        lift::select_design(rot::edst3_rotation_factorization(8), 8).quantized, k8);
    CHECK(lift::serialize_network(nets.dst4) == lift::serialize_network(q4));
    CHECK(lift::serialize_network(nets.dst8) == lift::serialize_network(q8));
}

TEST_CASE("bundled corpus") {
    const std::filesystem::path dir = I2I_TEST_CORPUS_DIR;
    REQUIRE(std::filesystem::exists(dir / "camera.pgm"));
    const auto f = read_pgm((dir / "camera.pgm").string());
    const auto enc = encode_frame(f, CodecProfile::HEVCV1);
    CHECK(decode_frame(enc.bytes).frame == f);
    const auto s = collect_stats(enc.blocks);
    CHECK(s.size_share[0] == doctest::Approx(*std::max_element(s.size_share.begin(), s.size_share.end())));
}
