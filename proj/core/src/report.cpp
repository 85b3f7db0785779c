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

#include "i2i/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "i2i/error.hpp"
#include "i2i/reference_values.hpp"

namespace i2i::report {

namespace {

bool at_reference_rho(double rho) { return std::abs(rho - reference::kRho) < 1e-12; }

std::optional<double> ref_if(bool use, double v) { return use ? std::optional<double>(v) : std::nullopt; }

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double klt_of(const math::CorrelationModel& k) { return math::coding_gain(math::klt_matrix(k), k).value; }

}  // namespace

bool Table::pass() const {
    for (const auto& r : rows)
        if (!r.pass()) return false;
    return true;
}

std::string Table::to_csv() const {
    std::string out = "label,value,reference,delta,tolerance,pass\n";
    for (const auto& r : rows) {
        out += r.label + "," + fmt(r.value, 6) + ",";
        out += r.reference ? fmt(*r.reference, 4) : "";
        out += ",";
        out += r.delta() ? fmt(*r.delta(), 6) : "";
        out += "," + (r.reference ? fmt(r.tolerance, 4) : std::string()) + "," + (r.pass() ? "pass" : "FAIL") + "\n";
    }
    return out;
}

std::string Table::to_text() const {
    std::ostringstream os;
    os << name << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "  %-22s %12s %12s %10s  %s\n", "row", "value", "reference", "delta", "");
    os << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "  %-22s %12.6f %12s %10s  %s\n", r.label.c_str(), r.value,
                      r.reference ? fmt(*r.reference, 4).c_str() : "-", r.delta() ? fmt(*r.delta(), 6).c_str() : "-",
                      r.reference ? (r.pass() ? "ok" : "FAIL") : "");
        os << line;
    }
    return os.str();
}

Table rotation_table(double rho, std::size_t l_min, std::size_t l_max, bool parallel_only,
                     const rot::OptimizerConfig& config) {
    if (l_min < 1 || l_max < l_min) throw InvalidArgument("rotation count range is empty");
    const auto k = math::residual_autocorrelation(rho, 4);
    const double klt = klt_of(k);
    const bool ref = at_reference_rho(rho);
    Table t{parallel_only ? "Cascade gains, N=4, parallel stages (dB vs KLT)" : "Cascade gains, N=4 (dB vs KLT)", {}};
    t.rows.push_back({"DCT", math::coding_gain(math::dct2_matrix(4), k).value - klt, ref_if(ref, reference::kDct4),
                      reference::kSizeTableTolerance});
    t.rows.push_back({"ODST-3", math::coding_gain(math::odst3_matrix(4), k).value - klt,
                      ref_if(ref, reference::kOdst4), reference::kSizeTableTolerance});
    t.rows.push_back({"DPCM", math::coding_gain(math::dpcm_matrix(4), k).value - klt, ref_if(ref, reference::kDpcm4),
                      reference::kSizeTableTolerance});
    auto cfg = config;
    cfg.parallel_only = parallel_only;
    for (std::size_t L = l_min; L <= l_max; ++L) {
        const auto c = rot::search_cascade(4, L, k, cfg);
        std::optional<double> r;
        if (ref && !parallel_only && L >= 2 && L <= 5) r = reference::kCascade4[L - 2];
        if (ref && parallel_only && L == 4) r = reference::kParallelCascade4;
        t.rows.push_back({"cascade L=" + std::to_string(L), c.gain->relative(), r, reference::kCascadeTolerance});
    }
    return t;
}

Table quantization_table(double rho, int l_min, int l_max, int select_at) {
    if (l_min < 1 || l_max < l_min || l_max > 52) throw InvalidArgument("precision range must lie in [1, 52]");
    const auto k = math::residual_autocorrelation(rho, 4);
    const bool ref = at_reference_rho(rho);
    const auto cascade = rot::search_cascade(4, 4, k, {});
    const auto design = lift::select_design(cascade, select_at, {0.005, rho});
    const auto net = lift::cascade_to_lifting(cascade, design.combo);
    Table t{"Lifting design gains, N=4, L=4 (dB vs KLT)", {}};
    for (int l = l_min; l <= l_max; ++l) {
        const double g = lift::lifting_coding_gain(lift::quantize_network(net, l), k).relative();
        std::optional<double> r;
        if (ref && l <= 8) r = reference::kLifting4[static_cast<std::size_t>(l - 1)];
        t.rows.push_back({"l=" + std::to_string(l), g, r, reference::kLiftingTolerance});
    }
    return t;
}

Table block_size_table(double rho, const std::vector<std::size_t>& sizes) {
    const bool ref = at_reference_rho(rho);
    Table t{"Sinusoidal transforms by block size (dB vs KLT)", {}};
    for (std::size_t n : sizes) {
        const auto k = math::residual_autocorrelation(rho, n);
        const double klt = klt_of(k);
        std::size_t idx = reference::kSizes.size();
        for (std::size_t i = 0; i < reference::kSizes.size(); ++i)
            if (static_cast<std::size_t>(reference::kSizes[i]) == n) idx = i;
        const bool has = ref && idx < reference::kSizes.size();
        const std::string suffix = " N=" + std::to_string(n);
        t.rows.push_back({"ODST-3" + suffix, math::coding_gain(math::odst3_matrix(n), k).value - klt,
                          ref_if(has, has ? reference::kOdst[idx] : 0.0), reference::kSizeTableTolerance});
        t.rows.push_back({"EDST-3" + suffix, math::coding_gain(math::edst3_matrix(n), k).value - klt,
                          ref_if(has, has ? reference::kEdst[idx] : 0.0), reference::kSizeTableTolerance});
        t.rows.push_back({"DCT" + suffix, math::coding_gain(math::dct2_matrix(n), k).value - klt,
                          ref_if(has, has ? reference::kDct[idx] : 0.0), reference::kSizeTableTolerance});
    }
    return t;
}

Table klt_absolute_table(double rho) {
    const auto k = math::residual_autocorrelation(rho, 4);
    Table t{"KLT gain, N=4 (dB, unit-variance process)", {}};
    t.rows.push_back({"KLT", math::process_referenced_gain(math::klt_matrix(k).entries, k).value,
                      ref_if(at_reference_rho(rho), reference::kKltAbsolute4), reference::kKltAbsoluteTolerance});
    return t;
}

std::string DesignReport::text() const {
    std::ostringstream os;
    os << "cascade (n=" << cascade.n << ", " << cascade.rotations.size() << " rotations)\n";
    for (const auto& r : cascade.rotations) os << "  (" << r.i << "," << r.j << ") alpha=" << fmt(r.alpha, 6) << "\n";
    os << "types:";
    for (auto t : design.combo) os << " " << lift::to_string(t);
    os << "\nbranch scales B:";
    for (double b : design.quantized.branch_scales) os << " " << fmt(b, 4);
    double prod = 1.0;
    for (double b : design.quantized.branch_scales) prod *= b;
    os << "\nproduct of B: " << fmt(prod, 9) << "\n";
    os << "gain before quantization: " << fmt(exact_gain, 6) << " dB vs KLT\n";
    os << "gain after quantization (l=" << design.quantized.l << "): " << fmt(quantized_gain, 6) << " dB vs KLT\n";
    return os.str();
}

DesignReport design_pipeline(std::size_t n, std::size_t L, int l, double rho, const rot::OptimizerConfig& config) {
    if (n != 4 && n != 8) throw InvalidArgument("design supports n = 4 or n = 8");
    const auto k = math::residual_autocorrelation(rho, n);
    DesignReport r;
    r.cascade = n == 4 ? rot::search_cascade(4, L, k, config) : rot::edst3_rotation_factorization(8);
    r.design = lift::select_design(r.cascade, l, {0.005, rho});
    r.design.quantized = lift::order_outputs_by_variance(r.design.quantized, k);
    const double klt = klt_of(k);
    r.exact_gain = math::coding_gain(rot::cascade_matrix(r.cascade), k).value - klt;
    r.quantized_gain = lift::lifting_coding_gain(r.design.quantized, k).value - klt;
    return r;
}

}  // namespace i2i::report
