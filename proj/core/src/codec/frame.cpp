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

#include "i2i/codec/frame.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "i2i/error.hpp"

namespace i2i::codec {

Frame::Frame(int w, int h, std::uint8_t fill)
    : width(w), height(h), plane(static_cast<std::size_t>(w < 0 ? 0 : w) * static_cast<std::size_t>(h < 0 ? 0 : h), fill) {}

void validate(const Frame& f) {
    if (f.width < kMinDimension || f.height < kMinDimension || f.width > kMaxDimension || f.height > kMaxDimension)
        throw InvalidArgument("frame dimensions " + std::to_string(f.width) + "x" + std::to_string(f.height) +
                              " outside [" + std::to_string(kMinDimension) + ", " + std::to_string(kMaxDimension) + "]");
    if (f.plane.size() != static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height))
        throw InvalidArgument("frame plane size does not match its dimensions");
}

namespace {

class PgmScanner {
public:
    explicit PgmScanner(std::span<const std::uint8_t> b) : bytes_(b) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long number() {
        skip_space_and_comments();
        long v = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_]) && digits < 9) {
            v = v * 10 + (bytes_[pos_++] - '0');
            ++digits;
        }
        if (digits == 0) throw FormatError("PGM: expected a number in the header");
        return v;
    }

    std::size_t pos_ = 0;
    std::span<const std::uint8_t> bytes_;
};

}  // namespace

Frame parse_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw FormatError("PGM: missing P5 magic");
    PgmScanner s(bytes);
    s.pos_ = 2;
    const long w = s.number();
    const long h = s.number();
    const long maxval = s.number();
    if (maxval < 1 || maxval > 255) throw FormatError("PGM: only 8-bit images are supported");
    if (s.pos_ >= bytes.size() || !std::isspace(bytes[s.pos_])) throw FormatError("PGM: malformed header");
    ++s.pos_;
    if (w < kMinDimension || h < kMinDimension || w > kMaxDimension || h > kMaxDimension)
        throw FormatError("PGM: unsupported dimensions " + std::to_string(w) + "x" + std::to_string(h));
    const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() - s.pos_ < count) throw FormatError("PGM: pixel data is truncated");
    Frame f(static_cast<int>(w), static_cast<int>(h));
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(s.pos_), count, f.plane.begin());
    for (auto v : f.plane)
        if (v > maxval) throw FormatError("PGM: sample exceeds maxval");
    return f;
}

std::vector<std::uint8_t> format_pgm(const Frame& f) {
    validate(f);
    const std::string header = "P5\n" + std::to_string(f.width) + " " + std::to_string(f.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), f.plane.begin(), f.plane.end());
    return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading " + path);
    return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("error writing " + path);
}

Frame read_pgm(const std::string& path) { return parse_pgm(read_file(path)); }

void write_pgm(const Frame& f, const std::string& path) { write_file(path, format_pgm(f)); }

}  // namespace i2i::codec
