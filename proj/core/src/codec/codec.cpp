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

#include "i2i/codec/codec.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <zlib.h>

#include "i2i/codec/bitio.hpp"
#include "i2i/codec/entropy.hpp"
#include "i2i/error.hpp"

namespace i2i::codec {

namespace {

constexpr std::uint8_t kMagic[4] = {'I', '2', 'I', 'C'};
constexpr std::size_t kHeaderBytes = 4 + 1 + 1 + 4 + 4 + 1 + 1 + 4 + 4;
constexpr std::size_t kTrailerBytes = 4;
constexpr int kCtuSize = 1 << kCtuLog2;
constexpr int kMinBlock = 1 << kMinBlockLog2;

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
    uLong c = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; frames are far below 4 GiB.
    c = crc32(c, bytes.data(), static_cast<uInt>(bytes.size()));
    return static_cast<std::uint32_t>(c);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t pos) {
    return (std::uint32_t{b[pos]} << 24) | (std::uint32_t{b[pos + 1]} << 16) | (std::uint32_t{b[pos + 2]} << 8) |
           std::uint32_t{b[pos + 3]};
}

int log2_size(int size) {
    int l = 0;
    while ((1 << l) < size) ++l;
    return l;
}

std::vector<int> diagonal_scan(int n) {
    std::vector<int> scan;
    for (int d = 0; d <= 2 * (n - 1); ++d)
        for (int r = std::min(d, n - 1); r >= 0 && d - r < n; --r) scan.push_back(r * n + (d - r));
    return scan;
}

int padded(int v) { return (v + kMinBlock - 1) / kMinBlock * kMinBlock; }

}  // namespace

std::uint32_t network_fingerprint(const CodecNetworks& nets) {
    const std::string text = lift::serialize_network(nets.dst4) + lift::serialize_network(nets.dst8);
    return crc_of({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

ResidualCoder::ResidualCoder(CodecProfile profile, const CodecNetworks& nets) : profile_(profile) {
    if (nets.dst4.n != 4 || nets.dst8.n != 8) throw InvalidArgument("codec networks must be 4- and 8-point");
    t4_ = std::make_unique<exec::I2ITransform>(nets.dst4);
    t8_ = std::make_unique<exec::I2ITransform>(nets.dst8);
    for (int l = kMinBlockLog2; l <= kCtuLog2; ++l) scans_[static_cast<std::size_t>(l)] = diagonal_scan(1 << l);
}

const exec::I2ITransform& ResidualCoder::transform(int size) const {
    if (size == 4) return *t4_;
    if (size == 8) return *t8_;
    throw InvalidArgument("no i2i transform for block size " + std::to_string(size));
}

void ResidualCoder::forward(ResidualPath path, int size, std::span<const std::int32_t> residual,
                            std::span<std::int32_t> coeffs) const {
    const auto n = static_cast<std::size_t>(size);
    switch (path) {
        case ResidualPath::Skip:
            std::copy(residual.begin(), residual.end(), coeffs.begin());
            return;
        case ResidualPath::RdpcmH:
            for (std::size_t r = 0; r < n; ++r) {
                coeffs[r * n] = residual[r * n];
                for (std::size_t c = 1; c < n; ++c) coeffs[r * n + c] = residual[r * n + c] - residual[r * n + c - 1];
            }
            return;
        case ResidualPath::RdpcmV:
            for (std::size_t c = 0; c < n; ++c) coeffs[c] = residual[c];
            for (std::size_t i = n; i < n * n; ++i) coeffs[i] = residual[i] - residual[i - n];
            return;
        case ResidualPath::I2IDst: {
            const auto& t = transform(size);  // only 4 and 8, so n * n <= 64
            std::array<std::int32_t, 64> buf{};
            for (std::size_t i = 0; i < n * n; ++i) buf[i] = residual[i];
            for (std::size_t r = 0; r < n; ++r) t.forward_strided(buf.data() + r * n, 1);
            for (std::size_t c = 0; c < n; ++c) t.forward_strided(buf.data() + c, n);
            const auto& scan = scans_[static_cast<std::size_t>(log2_size(size))];
            for (std::size_t i = 0; i < n * n; ++i) coeffs[i] = buf[static_cast<std::size_t>(scan[i])];
            return;
        }
    }
}

void ResidualCoder::inverse(ResidualPath path, int size, std::span<const std::int32_t> coeffs,
                            std::span<std::int32_t> residual) const {
    const auto n = static_cast<std::size_t>(size);
    switch (path) {
        case ResidualPath::Skip:
            std::copy(coeffs.begin(), coeffs.end(), residual.begin());
            return;
        case ResidualPath::RdpcmH:
            for (std::size_t r = 0; r < n; ++r) {
                residual[r * n] = coeffs[r * n];
                for (std::size_t c = 1; c < n; ++c) residual[r * n + c] = residual[r * n + c - 1] + coeffs[r * n + c];
            }
            return;
        case ResidualPath::RdpcmV:
            for (std::size_t c = 0; c < n; ++c) residual[c] = coeffs[c];
            for (std::size_t i = n; i < n * n; ++i) residual[i] = residual[i - n] + coeffs[i];
            return;
        case ResidualPath::I2IDst: {
            const auto& t = transform(size);  // only 4 and 8, so n * n <= 64
            std::array<std::int32_t, 64> buf{};
            const auto& scan = scans_[static_cast<std::size_t>(log2_size(size))];
            for (std::size_t i = 0; i < n * n; ++i) buf[static_cast<std::size_t>(scan[i])] = coeffs[i];
            for (std::size_t c = 0; c < n; ++c) t.inverse_strided(buf.data() + c, n);
            for (std::size_t r = 0; r < n; ++r) t.inverse_strided(buf.data() + r * n, 1);
            for (std::size_t i = 0; i < n * n; ++i) residual[i] = buf[i];
            return;
        }
    }
}

BlockChoice choose_block_coding(const PlaneView& source, const CausalLayout& layout, int x, int y, int size,
                                const ResidualCoder& coder) {
    const auto count = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
    const auto refs = gather_references(source, layout, x, y, size);
    std::vector<std::int32_t> pred(count), residual(count), coeffs(count);
    BlockChoice best;
    for (int mode = 0; mode < kNumIntraModes; ++mode) {
        intra_predict(refs, mode, pred);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                const auto i = static_cast<std::size_t>(r * size + c);
                residual[i] = source.at(x + c, y + r) - pred[i];
            }
        const ResidualPath path = residual_path(coder.profile(), size, mode);
        coder.forward(path, size, residual, coeffs);
        const std::size_t bits = kModeBits + residual_bits(coeffs);
        if (mode == 0 || bits < best.bits) {
            best.mode = mode;
            best.path = path;
            best.bits = bits;
            best.coeffs = coeffs;
        }
    }
    return best;
}

namespace {

struct PlanNode {
    int x = 0, y = 0, size = 0;
    bool split = false;
    bool forced = false;  // crosses the plane edge; no flag coded
    BlockChoice choice;
    std::vector<PlanNode> children;
    std::size_t bits = 0;
};

class Encoder {
public:
    Encoder(const PlaneView& src, const ResidualCoder& coder)
        : src_(src), layout_(src.width, src.height, kCtuSize), coder_(coder) {}

    PlanNode plan(int x, int y, int size) const {
        PlanNode node;
        node.x = x;
        node.y = y;
        node.size = size;
        const bool inside = x + size <= src_.width && y + size <= src_.height;
        if (!inside) {
            node.split = node.forced = true;
            for (const auto& [cx, cy] : quadrants(x, y, size))
                if (cx < src_.width && cy < src_.height) {
                    node.children.push_back(plan(cx, cy, size / 2));
                    node.bits += node.children.back().bits;
                }
            return node;
        }
        node.choice = choose_block_coding(src_, layout_, x, y, size, coder_);
        const std::size_t leaf_bits = node.choice.bits + (size > kMinBlock ? 1 : 0);
        node.bits = leaf_bits;
        if (size == kMinBlock) return node;

        std::vector<PlanNode> kids;
        std::size_t split_bits = 1;
        for (const auto& [cx, cy] : quadrants(x, y, size)) {
            kids.push_back(plan(cx, cy, size / 2));
            split_bits += kids.back().bits;
        }
        if (split_bits < leaf_bits) {
            node.split = true;
            node.children = std::move(kids);
            node.bits = split_bits;
            node.choice = {};
        }
        return node;
    }

    void write(const PlanNode& node, BitWriter& out, std::vector<BlockRecord>& blocks) const {
        if (!node.forced && node.size > kMinBlock) out.put_bit(node.split);
        if (node.split) {
            for (const auto& c : node.children) write(c, out, blocks);
            return;
        }
        out.put(static_cast<std::uint64_t>(node.choice.mode), kModeBits);
        entropy_code_residual(node.choice.coeffs, out);
        blocks.push_back({node.x, node.y, node.size, node.choice.mode, node.choice.path, node.choice.bits});
    }

    static std::array<std::pair<int, int>, 4> quadrants(int x, int y, int size) {
        const int h = size / 2;
        return {{{x, y}, {x + h, y}, {x, y + h}, {x + h, y + h}}};
    }

private:
    PlaneView src_;
    CausalLayout layout_;
    const ResidualCoder& coder_;
};

class Decoder {
public:
    Decoder(std::vector<std::uint8_t>& plane, int width, int height, const ResidualCoder& coder, BitReader& in)
        : plane_(plane), width_(width), height_(height), layout_(width, height, kCtuSize), coder_(coder), in_(in) {}

    void node(int x, int y, int size, std::vector<BlockRecord>& blocks) {
        const bool inside = x + size <= width_ && y + size <= height_;
        bool split = !inside;
        if (inside && size > kMinBlock) split = in_.get_bit();
        if (split) {
            for (const auto& [cx, cy] : Encoder::quadrants(x, y, size))
                if (cx < width_ && cy < height_) node(cx, cy, size / 2, blocks);
            return;
        }
        const auto count = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
        const int mode = static_cast<int>(in_.get(kModeBits));
        if (mode >= kNumIntraModes) throw FormatError("invalid intra mode " + std::to_string(mode));
        const ResidualPath path = residual_path(coder_.profile(), size, mode);
        coeffs_.resize(count);
        residual_.resize(count);
        pred_.resize(count);
        entropy_decode_residual(in_, coeffs_);
        coder_.inverse(path, size, coeffs_, residual_);
        const PlaneView view{plane_.data(), width_, height_};
        intra_predict(gather_references(view, layout_, x, y, size), mode, pred_);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                const auto i = static_cast<std::size_t>(r * size + c);
                const std::int64_t v = std::int64_t{pred_[i]} + residual_[i];
                if (v < 0 || v > 255) throw FormatError("decoded sample out of range");
                plane_[static_cast<std::size_t>(y + r) * width_ + (x + c)] = static_cast<std::uint8_t>(v);
            }
        blocks.push_back({x, y, size, mode, path, 0});
    }

private:
    std::vector<std::uint8_t>& plane_;
    int width_, height_;
    CausalLayout layout_;
    const ResidualCoder& coder_;
    BitReader& in_;
    std::vector<std::int32_t> coeffs_, residual_, pred_;
};

}  // namespace

EncodeResult encode_frame(const Frame& frame, CodecProfile profile, const CodecNetworks& nets) {
    validate(frame);
    const int wp = padded(frame.width);
    const int hp = padded(frame.height);
    std::vector<std::uint8_t> plane(static_cast<std::size_t>(wp) * static_cast<std::size_t>(hp));
    for (int y = 0; y < hp; ++y)
        for (int x = 0; x < wp; ++x)
            plane[static_cast<std::size_t>(y) * wp + x] = frame.at(std::min(x, frame.width - 1), std::min(y, frame.height - 1));

    const ResidualCoder coder(profile, nets);
    const Encoder enc({plane.data(), wp, hp}, coder);
    BitWriter bits;
    EncodeResult result;
    for (int cy = 0; cy < hp; cy += kCtuSize)
        for (int cx = 0; cx < wp; cx += kCtuSize) enc.write(enc.plan(cx, cy, kCtuSize), bits, result.blocks);
    const auto payload = bits.finish();

    auto& out = result.bytes;
    out.assign(std::begin(kMagic), std::end(kMagic));
    out.push_back(kStreamVersion);
    out.push_back(static_cast<std::uint8_t>(profile));
    put_u32(out, static_cast<std::uint32_t>(frame.width));
    put_u32(out, static_cast<std::uint32_t>(frame.height));
    out.push_back(static_cast<std::uint8_t>(kCtuLog2));
    out.push_back(static_cast<std::uint8_t>(kMinBlockLog2));
    put_u32(out, network_fingerprint(nets));
    put_u32(out, static_cast<std::uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    put_u32(out, crc_of(frame.plane));
    return result;
}

DecodeResult decode_frame(std::span<const std::uint8_t> stream, const CodecNetworks& nets) {
    if (stream.size() >= 4 && !std::equal(std::begin(kMagic), std::end(kMagic), stream.begin()))
        throw FormatError("not an I2IC stream (bad magic)");
    if (stream.size() < kHeaderBytes) throw TruncatedStream("stream shorter than its header");
    if (stream[4] != kStreamVersion) throw FormatError("unsupported stream version " + std::to_string(stream[4]));
    if (stream[5] >= std::size(kAllProfiles)) throw FormatError("unknown profile id " + std::to_string(stream[5]));
    DecodeResult result;
    result.profile = static_cast<CodecProfile>(stream[5]);
    const std::uint32_t w = get_u32(stream, 6);
    const std::uint32_t h = get_u32(stream, 10);
    if (w < kMinDimension || h < kMinDimension || w > kMaxDimension || h > kMaxDimension)
        throw FormatError("unsupported frame size " + std::to_string(w) + "x" + std::to_string(h));
    if (stream[14] != kCtuLog2 || stream[15] != kMinBlockLog2) throw FormatError("unsupported partition parameters");
    if (get_u32(stream, 16) != network_fingerprint(nets))
        throw FormatError("stream was encoded with different transform networks");
    const std::size_t payload_size = get_u32(stream, 20);
    if (stream.size() - kHeaderBytes < payload_size + kTrailerBytes) throw TruncatedStream("stream is truncated");
    if (stream.size() - kHeaderBytes > payload_size + kTrailerBytes)
        throw FormatError("unexpected bytes after the checksum");

    const int wp = padded(static_cast<int>(w));
    const int hp = padded(static_cast<int>(h));
    std::vector<std::uint8_t> plane(static_cast<std::size_t>(wp) * static_cast<std::size_t>(hp));
    const ResidualCoder coder(result.profile, nets);
    BitReader in(stream.subspan(kHeaderBytes, payload_size));
    Decoder dec(plane, wp, hp, coder, in);
    try {
        for (int cy = 0; cy < hp; cy += kCtuSize)
            for (int cx = 0; cx < wp; cx += kCtuSize) dec.node(cx, cy, kCtuSize, result.blocks);
    } catch (const OverflowError& e) {
        throw FormatError(std::string("corrupt coefficients: ") + e.what());
    }
    if (!in.at_padding()) throw FormatError("payload has trailing data");

    Frame f(static_cast<int>(w), static_cast<int>(h));
    for (int y = 0; y < f.height; ++y)
        std::copy_n(plane.begin() + static_cast<std::ptrdiff_t>(y) * wp, f.width,
                    f.plane.begin() + static_cast<std::ptrdiff_t>(y) * f.width);
    if (crc_of(f.plane) != get_u32(stream, kHeaderBytes + payload_size))
        throw ChecksumMismatch("decoded frame does not match the stream checksum");
    result.frame = std::move(f);
    return result;
}

std::size_t audit_policy(CodecProfile profile, const std::vector<BlockRecord>& blocks) {
    return static_cast<std::size_t>(std::count_if(blocks.begin(), blocks.end(), [&](const BlockRecord& b) {
        return b.path != residual_path(profile, b.size, b.mode);
    }));
}

UsageStats collect_stats(const std::vector<BlockRecord>& blocks) {
    UsageStats s;
    double total = 0.0, hv = 0.0;
    std::array<double, 4> by_size{};
    for (const auto& b : blocks) {
        const double px = static_cast<double>(b.size) * b.size;
        total += px;
        by_size[static_cast<std::size_t>(log2_size(b.size) - kMinBlockLog2)] += px;
        if (is_hor_ver(b.mode)) hv += px;
    }
    if (total == 0.0) return s;
    for (std::size_t i = 0; i < 4; ++i) s.size_share[i] = 100.0 * by_size[i] / total;
    s.hor_ver_share = 100.0 * hv / total;
    s.other_share = 100.0 - s.hor_ver_share;
    return s;
}

}  // namespace i2i::codec
