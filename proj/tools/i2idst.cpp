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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "i2i/codec/codec.hpp"
#include "i2i/error.hpp"
#include "i2i/i2i_exec.hpp"
#include "i2i/reference_values.hpp"
#include "i2i/report.hpp"

namespace fs = std::filesystem;
using namespace i2i;

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kTolerance = 3, kIo = 4, kFormat = 5 };

void write_text(const std::string& path, const std::string& text) {
    codec::write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::string read_text(const std::string& path) {
    const auto b = codec::read_file(path);
    return {b.begin(), b.end()};
}

codec::CodecNetworks load_networks(const std::string& net4, const std::string& net8) {
    codec::CodecNetworks nets = codec::default_networks();
    if (!net4.empty()) nets.dst4 = lift::parse_network(read_text(net4));
    if (!net8.empty()) nets.dst8 = lift::parse_network(read_text(net8));
    return nets;
}

codec::CodecProfile profile_from(const std::string& name) {
    const auto p = codec::parse_profile(name);
    if (!p) throw InvalidArgument("unknown profile '" + name + "'");
    return *p;
}

std::string corpus_dir(const std::string& given) {
    if (!given.empty()) return given;
    if (const char* env = std::getenv("I2I_CORPUS_DIR"); env && *env) return env;
    return I2I_DEFAULT_CORPUS_DIR;
}

struct Options {
    double rho = reference::kRho;
    std::size_t L = 5;
    int l = 8;
    std::vector<std::size_t> sizes{4, 8, 16, 32};
    bool parallel_only = false;
    bool klt_abs = false;
    std::uint64_t seed = 1;
    std::string out;
    std::string input;
    std::string profile = "I2IDST4_RDPCM";
    std::vector<std::string> profiles;
    std::string net4, net8;
};

int run_tables(const Options& o) {
    rot::OptimizerConfig cfg;
    cfg.seed = o.seed;
    std::vector<report::Table> tables;
    if (o.klt_abs) {
        tables.push_back(report::klt_absolute_table(o.rho));
    } else {
        tables.push_back(report::klt_absolute_table(o.rho));
        tables.push_back(report::rotation_table(o.rho, o.parallel_only ? 4 : 2, o.parallel_only ? 4 : o.L,
                                                o.parallel_only, cfg));
        if (!o.parallel_only) {
            tables.push_back(report::quantization_table(o.rho, 1, o.l));
            tables.push_back(report::block_size_table(o.rho, o.sizes));
        }
    }
    bool ok = true;
    const char* files[] = {"klt_absolute.csv", "cascade_gains.csv", "lifting_gains.csv", "block_sizes.csv"};
    for (std::size_t i = 0; i < tables.size(); ++i) {
        std::cout << tables[i].to_text() << "\n";
        ok = ok && tables[i].pass();
        if (!o.out.empty()) {
            fs::create_directories(o.out);
            write_text((fs::path(o.out) / files[i]).string(), tables[i].to_csv());
        }
    }
    std::cout << (ok ? "all reference rows within tolerance\n" : "reference check FAILED\n");
    return ok ? kOk : kTolerance;
}

int run_design(const Options& o) {
    rot::OptimizerConfig cfg;
    cfg.seed = o.seed;
    const std::size_t n = o.sizes.empty() ? 4 : o.sizes.front();
    const auto r = report::design_pipeline(n, o.L, o.l, o.rho, cfg);
    std::cout << r.text();
    if (!o.out.empty()) {
        write_text(o.out, lift::serialize_network(r.design.quantized));
        write_text(o.out + ".report.txt", rot::serialize_cascade(r.cascade) + r.text());
        std::cout << "wrote " << o.out << "\n";
    } else {
        std::cout << lift::serialize_network(r.design.quantized);
    }
    return kOk;
}

int run_encode(const Options& o) {
    if (o.out.empty()) throw InvalidArgument("encode needs --out");
    const auto frame = codec::read_pgm(o.input);
    const auto result = codec::encode_frame(frame, profile_from(o.profile), load_networks(o.net4, o.net8));
    codec::write_file(o.out, result.bytes);
    const auto s = codec::collect_stats(result.blocks);
    std::printf("%s: %zu bytes (%.4f bpp), blocks 4/8/16/32: %.1f/%.1f/%.1f/%.1f %%\n", o.profile.c_str(),
                result.bytes.size(), 8.0 * static_cast<double>(result.bytes.size()) / (frame.width * frame.height),
                s.size_share[0], s.size_share[1], s.size_share[2], s.size_share[3]);
    return kOk;
}

int run_decode(const Options& o) {
    if (o.out.empty()) throw InvalidArgument("decode needs --out");
    const auto result = codec::decode_frame(codec::read_file(o.input), load_networks(o.net4, o.net8));
    if (codec::audit_policy(result.profile, result.blocks) != 0) {
        std::cerr << "policy audit failed\n";
        return kTolerance;
    }
    codec::write_pgm(result.frame, o.out);
    std::printf("decoded %dx%d (%s)\n", result.frame.width, result.frame.height,
                std::string(codec::to_string(result.profile)).c_str());
    return kOk;
}

int run_compare(const Options& o) {
    const std::string dir = corpus_dir(o.input);
    std::vector<fs::path> images;
    if (!fs::is_directory(dir)) throw IoError("corpus directory not found: " + dir);
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".pgm") images.push_back(e.path());
    std::sort(images.begin(), images.end());
    if (images.empty()) throw IoError("no .pgm files in " + dir);

    std::vector<codec::CodecProfile> profiles;
    for (const auto& p : o.profiles) profiles.push_back(profile_from(p));
    if (profiles.empty()) profiles.assign(std::begin(codec::kAllProfiles), std::end(codec::kAllProfiles));
    if (std::find(profiles.begin(), profiles.end(), codec::CodecProfile::HEVCV1) == profiles.end())
        profiles.insert(profiles.begin(), codec::CodecProfile::HEVCV1);

    const auto nets = load_networks(o.net4, o.net8);
    std::string csv = "image,profile,bits,saving_vs_HEVCV1_percent,lossless\n";
    std::vector<double> totals(profiles.size(), 0.0);
    bool lossless = true;
    for (const auto& path : images) {
        const auto frame = codec::read_pgm(path.string());
        double base = 0.0;
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            const auto enc = codec::encode_frame(frame, profiles[i], nets);
            const bool ok = codec::decode_frame(enc.bytes, nets).frame == frame;
            lossless = lossless && ok;
            const double bits = 8.0 * static_cast<double>(enc.bytes.size());
            if (profiles[i] == codec::CodecProfile::HEVCV1) base = bits;
            totals[i] += bits;
            char line[256];
            std::snprintf(line, sizeof line, "%s,%s,%.0f,%.3f,%s\n", path.stem().string().c_str(),
                          std::string(codec::to_string(profiles[i])).c_str(), bits, 100.0 * (1.0 - bits / base),
                          ok ? "yes" : "NO");
            csv += line;
        }
    }
    double base_total = 0.0;
    for (std::size_t i = 0; i < profiles.size(); ++i)
        if (profiles[i] == codec::CodecProfile::HEVCV1) base_total = totals[i];
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        char line[256];
        std::snprintf(line, sizeof line, "MEAN,%s,%.0f,%.3f,%s\n", std::string(codec::to_string(profiles[i])).c_str(),
                      totals[i] / static_cast<double>(images.size()), 100.0 * (1.0 - totals[i] / base_total),
                      lossless ? "yes" : "NO");
        csv += line;
    }
    std::cout << csv
              << "# note: savings come from an adaptive Golomb-Rice coder; absolute magnitudes are not comparable "
                 "to CABAC-based HEVC results\n";
    if (!o.out.empty()) write_text(o.out, csv);
    return lossless ? kOk : kTolerance;
}

int run_selftest(const Options& o) {
    int failures = 0;
    auto report = [&](const std::string& what, bool ok, const std::string& detail) {
        std::printf("%-44s %s  %s\n", what.c_str(), ok ? "pass" : "FAIL", detail.c_str());
        failures += !ok;
    };
    const auto& nets = codec::default_networks();
    const exec::I2ITransform t4(nets.dst4), t8(nets.dst8), dct(lift::dct4_lifting_network());
    for (const auto& [name, t] : {std::pair<std::string, const exec::I2ITransform*>{"4-point DST", &t4},
                                  {"8-point DST", &t8}, {"4-point DCT", &dct}}) {
        const int range = t->size() == 4 ? 2 : 1;
        const auto r = exec::self_test(*t, range);
        report(name + " exhaustive reconstruction", r.passed(),
               std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures");
        const double det = determinant(t->network().matrix());
        report(name + " determinant", std::abs(std::abs(det) - 1.0) < 1e-9, "det = " + std::to_string(det));
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> d(-255, 255);
    std::uint64_t cases = 0, bad = 0;
    for (int i = 0; i < 100000; ++i) {
        exec::ResidualBlock b4(4, 4), b8(8, 8);
        for (auto& v : b4.samples) v = d(rng);
        for (auto& v : b8.samples) v = d(rng);
        bad += exec::inverse_i2i_2d(t4, exec::forward_i2i_2d(t4, b4)) != b4;
        bad += (i % 10 == 0) && exec::inverse_i2i_2d(t8, exec::forward_i2i_2d(t8, b8)) != b8;
        cases += 1 + (i % 10 == 0);
    }
    report("random 2-D block reconstruction", bad == 0, std::to_string(cases) + " blocks, " + std::to_string(bad) + " failures");
    std::size_t frames = 0, wrong = 0;
    for (auto p : codec::kAllProfiles)
        for (int i = 0; i < 3; ++i) {
            codec::Frame f(24 + 8 * i, 20 + 4 * i);
            for (auto& v : f.plane) v = static_cast<std::uint8_t>(rng() % 256);
            ++frames;
            const auto dec = codec::decode_frame(codec::encode_frame(f, p).bytes);
            wrong += dec.frame != f || codec::audit_policy(p, dec.blocks) != 0;
        }
    report("codec round trip + policy audit", wrong == 0, std::to_string(frames) + " frames, " + std::to_string(wrong) + " failures");
    return failures == 0 ? kOk : kTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"i2idst: integer-to-integer DST design toolkit and lossless intra codec"};
    app.require_subcommand(1);
    Options o;

    auto* tables = app.add_subcommand("tables", "Reproduce the coding-gain tables and check the reference values");
    tables->add_option("--rho", o.rho, "Correlation coefficient")->check(CLI::Range(0.0, 0.999999));
    tables->add_option("--L", o.L, "Largest rotation count")->check(CLI::Range(1, 8));
    tables->add_option("--l", o.l, "Largest lifting precision")->check(CLI::Range(1, 52));
    tables->add_option("--n", o.sizes, "Block sizes for the size table")->check(CLI::Range(2, 32));
    tables->add_flag("--parallel-only", o.parallel_only, "Restrict the cascade search to parallel stages");
    tables->add_flag("--klt-abs", o.klt_abs, "Only print the absolute KLT gain");
    tables->add_option("--seed", o.seed, "Optimizer seed");
    tables->add_option("--out", o.out, "Directory for CSV output");

    auto* design = app.add_subcommand("design", "Design a quantized lifting network");
    o.sizes = {4, 8, 16, 32};
    design->add_option("--n", o.sizes, "Transform size (4 or 8)")->check(CLI::IsMember({4, 8}));
    design->add_option("--L", o.L, "Rotation count (n = 4)")->check(CLI::Range(1, 6));
    design->add_option("--l", o.l, "Lifting precision")->check(CLI::Range(0, 24));
    design->add_option("--rho", o.rho, "Correlation coefficient")->check(CLI::Range(0.0, 0.999999));
    design->add_option("--seed", o.seed, "Optimizer seed");
    design->add_option("--out", o.out, "Network output file");

    auto* encode = app.add_subcommand("encode", "Encode a PGM image");
    encode->add_option("input", o.input, "Input PGM")->required();
    encode->add_option("--profile", o.profile, "Codec profile");
    encode->add_option("--out,-o", o.out, "Output bitstream")->required();
    encode->add_option("--net4", o.net4, "4-point network file");
    encode->add_option("--net8", o.net8, "8-point network file");

    auto* decode = app.add_subcommand("decode", "Decode a bitstream to PGM");
    decode->add_option("input", o.input, "Input bitstream")->required();
    decode->add_option("--out,-o", o.out, "Output PGM")->required();
    decode->add_option("--net4", o.net4, "4-point network file");
    decode->add_option("--net8", o.net8, "8-point network file");

    auto* compare = app.add_subcommand("compare", "Bit counts of every profile on a corpus directory");
    compare->add_option("corpus", o.input, "Corpus directory (default: $I2I_CORPUS_DIR or the bundled corpus)");
    compare->add_option("--profile", o.profiles, "Profiles to compare (default: all)");
    compare->add_option("--out", o.out, "CSV output file");
    compare->add_option("--net4", o.net4, "4-point network file");
    compare->add_option("--net8", o.net8, "8-point network file");

    auto* selftest = app.add_subcommand("selftest", "Run the reconstruction and codec self checks");
    selftest->add_option("--seed", o.seed, "Seed for the random checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }
    if (!design->parsed()) o.sizes = tables->count("--n") ? o.sizes : std::vector<std::size_t>{4, 8, 16, 32};

    try {
        if (tables->parsed()) return run_tables(o);
        if (design->parsed()) {
            if (!design->count("--n")) o.sizes = {4};
            if (!design->count("--L")) o.L = 4;
            if (!design->count("--l")) o.l = o.sizes.front() == 8 ? 8 : 3;
            return run_design(o);
        }
        if (encode->parsed()) return run_encode(o);
        if (decode->parsed()) return run_decode(o);
        if (compare->parsed()) return run_compare(o);
        if (selftest->parsed()) return run_selftest(o);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFormat;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTolerance;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kValidation;
}
