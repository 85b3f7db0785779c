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

#include "i2i/lifting_designer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>

#include "i2i/error.hpp"

namespace i2i::lift {

namespace {

constexpr double kSingular = 1e-12;

void apply_step(Matrix& m, const LiftingStep& s) {
    auto dst = m.row(static_cast<std::size_t>(s.dst));
    const auto src = m.row(static_cast<std::size_t>(s.src));
    for (std::size_t c = 0; c < m.cols(); ++c) dst[c] += s.param * src[c];
}

void check_branch(int b, std::size_t n, const char* what) {
    if (b < 0 || b >= static_cast<int>(n))
        throw InvalidArgument(std::string(what) + ": branch " + std::to_string(b) + " out of range");
}

void check_permutation(const std::vector<int>& perm, std::size_t n) {
    if (perm.size() != n) throw InvalidArgument("output permutation has the wrong length");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        check_branch(p, n, "output permutation");
        if (seen[static_cast<std::size_t>(p)]) throw InvalidArgument("output permutation repeats a branch");
        seen[static_cast<std::size_t>(p)] = true;
    }
}

double klt_gain(const math::CorrelationModel& k) {
    return math::coding_gain(math::klt_matrix(k), k).value;
}

}  // namespace

std::string to_string(LiftType t) {
    switch (t) {
        case LiftType::ThreeLift: return "three-lift";
        case LiftType::Type1: return "type-1";
        case LiftType::Type2: return "type-2";
        case LiftType::Type3: return "type-3";
        case LiftType::Type4: return "type-4";
    }
    return "?";
}

Matrix LiftDecomposition::local_matrix() const {
    Matrix m = Matrix::identity(2);
    for (const auto& s : steps) apply_step(m, s);
    for (std::size_t c = 0; c < 2; ++c) {
        m(0, c) *= upper_scale();
        m(1, c) *= lower_scale();
    }
    if (permutes_outputs)
        for (std::size_t c = 0; c < 2; ++c) std::swap(m(0, c), m(1, c));
    return m;
}

LiftDecomposition decompose_three_lift(double alpha) {
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    if (std::abs(s) < kSingular)
        throw SingularAngle("three-lift decomposition is undefined at alpha = 0");
    LiftDecomposition d;
    d.type = LiftType::ThreeLift;
    d.first = (c - 1.0) / s;
    d.second = s;
    // The two q shears act on the lower branch so the product is P(alpha)
    // with (cos, sin) in the upper row.
    d.steps = {{0, 1, d.first}, {1, 0, d.second}, {0, 1, d.first}};
    return d;
}

LiftDecomposition decompose_two_lift(double alpha, LiftType type) {
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    LiftDecomposition d;
    d.type = type;
    switch (type) {
        case LiftType::Type1:
        case LiftType::Type2:
            if (std::abs(c) < kSingular)
                throw SingularAngle(to_string(type) + " decomposition is singular at alpha = pi/2");
            break;
        case LiftType::Type3:
        case LiftType::Type4:
            if (std::abs(s) < kSingular)
                throw SingularAngle(to_string(type) + " decomposition is singular at alpha = 0");
            break;
        case LiftType::ThreeLift:
            throw InvalidArgument("decompose_two_lift called with the three-lift type");
    }
    switch (type) {
        case LiftType::Type1:
            d.first = s / c;
            d.second = -s * c;
            d.k1 = c;
            d.k2 = 1.0 / c;
            d.steps = {{1, 0, d.first}, {0, 1, d.second}};
            break;
        case LiftType::Type2:
            d.first = -s / c;
            d.second = s * c;
            d.k1 = 1.0 / c;
            d.k2 = c;
            d.steps = {{0, 1, d.first}, {1, 0, d.second}};
            break;
        case LiftType::Type3:
            d.first = -c / s;
            d.second = s * c;
            d.k1 = 1.0 / s;
            d.k2 = -s;
            d.permutes_outputs = true;
            d.steps = {{1, 0, d.first}, {0, 1, d.second}};
            break;
        case LiftType::Type4:
            d.first = c / s;
            d.second = -s * c;
            d.k1 = s;
            d.k2 = -1.0 / s;
            d.permutes_outputs = true;
            d.steps = {{0, 1, d.first}, {1, 0, d.second}};
            break;
        case LiftType::ThreeLift:
            break;
    }
    return d;
}

LiftDecomposition decompose(double alpha, LiftType type) {
    return type == LiftType::ThreeLift ? decompose_three_lift(alpha) : decompose_two_lift(alpha, type);
}

LiftingStep commute_scaling(const LiftingStep& step, double scale_src, double scale_dst) {
    if (scale_src == 0.0 || scale_dst == 0.0) throw InvalidArgument("cannot commute a zero scale");
    return {step.src, step.dst, step.param * scale_src / scale_dst};
}

Matrix LiftingNetwork::matrix(bool with_scales) const {
    Matrix t = Matrix::identity(n);
    for (const auto& s : steps) apply_step(t, s);
    Matrix out(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto src = static_cast<std::size_t>(output_permutation[m]);
        const double b = with_scales ? branch_scales[src] : 1.0;
        for (std::size_t c = 0; c < n; ++c) out(m, c) = b * t(src, c);
    }
    return out;
}

Matrix QuantizedLiftingNetwork::matrix() const {
    Matrix t = Matrix::identity(n);
    const double unit = std::ldexp(1.0, -l);
    for (const auto& s : steps) apply_step(t, {s.src, s.dst, static_cast<double>(s.k) * unit});
    Matrix out(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto src = static_cast<std::size_t>(output_permutation[m]);
        for (std::size_t c = 0; c < n; ++c) out(m, c) = t(src, c);
    }
    return out;
}

LiftingNetwork cascade_to_lifting(const rot::RotationCascade& cascade, const std::vector<LiftType>& combo) {
    const std::size_t n = cascade.n;
    if (combo.size() != cascade.rotations.size())
        throw InvalidArgument("type combination length " + std::to_string(combo.size()) +
                              " does not match cascade length " + std::to_string(cascade.rotations.size()));

    std::vector<int> phys(n);  // logical branch -> physical branch
    std::iota(phys.begin(), phys.end(), 0);
    std::vector<double> scale(n, 1.0);  // per physical branch, pending at the end

    LiftingNetwork net;
    net.n = n;
    for (std::size_t k = 0; k < cascade.rotations.size(); ++k) {
        const auto& r = cascade.rotations[k];
        if (r.i < 1 || r.j < 1 || r.i > static_cast<int>(n) || r.j > static_cast<int>(n) || r.i == r.j)
            throw InvalidArgument("rotation " + std::to_string(k + 1) + " has invalid branches");
        if (std::abs(r.alpha) < 1e-15) continue;  // identity pass-through

        LiftDecomposition d;
        try {
            d = decompose(r.alpha, combo[k]);
        } catch (const SingularAngle& e) {
            throw SingularAngle("rotation " + std::to_string(k + 1) + ": " + e.what());
        }
        const int upper = phys[static_cast<std::size_t>(r.i - 1)];
        const int lower = phys[static_cast<std::size_t>(r.j - 1)];
        const int local[2] = {upper, lower};
        for (const auto& s : d.steps) {
            const int src = local[s.src];
            const int dst = local[s.dst];
            net.steps.push_back(commute_scaling({src, dst, s.param}, scale[static_cast<std::size_t>(src)],
                                                scale[static_cast<std::size_t>(dst)]));
        }
        scale[static_cast<std::size_t>(upper)] *= d.upper_scale();
        scale[static_cast<std::size_t>(lower)] *= d.lower_scale();
        if (d.permutes_outputs)
            std::swap(phys[static_cast<std::size_t>(r.i - 1)], phys[static_cast<std::size_t>(r.j - 1)]);
    }

    net.output_permutation.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const std::size_t logical = cascade.output_order.empty() ? m : static_cast<std::size_t>(cascade.output_order[m]);
        net.output_permutation[m] = phys[logical];
        if (!cascade.output_sign.empty() && cascade.output_sign[m] < 0)
            scale[static_cast<std::size_t>(phys[logical])] = -scale[static_cast<std::size_t>(phys[logical])];
    }
    net.branch_scales = std::move(scale);
    return net;
}

std::int64_t quantize_param(double param, int l) {
    if (l < 0 || l > 52) throw InvalidArgument("quantization precision must lie in [0, 52]");
    const double scaled = std::ldexp(param, l);
    if (!(std::abs(scaled) < 9.0e18)) throw InvalidArgument("lifting parameter too large to quantize");
    return static_cast<std::int64_t>(std::llround(scaled));
}

QuantizedLiftingNetwork quantize_network(const LiftingNetwork& net, int l) {
    QuantizedLiftingNetwork q;
    q.n = net.n;
    q.l = l;
    for (const auto& s : net.steps) q.steps.push_back({s.src, s.dst, quantize_param(s.param, l)});
    q.output_permutation = net.output_permutation;
    q.branch_scales = net.branch_scales;
    return q;
}

bool parameters_in_range(const QuantizedLiftingNetwork& q) {
    const double limit = std::ldexp(1.0, q.l + 4);
    return std::all_of(q.steps.begin(), q.steps.end(),
                       [&](const QuantizedStep& s) { return std::abs(static_cast<double>(s.k)) < limit; });
}

math::CodingGainDb lifting_coding_gain(const QuantizedLiftingNetwork& q, const math::CorrelationModel& k) {
    if (q.n != k.size()) throw InvalidArgument("network size does not match the correlation model");
    return math::coding_gain(q.matrix(), k).relative_to(klt_gain(k));
}

double scale_score(const std::vector<double>& scales) {
    double worst = 0.0;
    for (double b : scales) worst = std::max(worst, std::abs(std::log(std::abs(b))));
    return worst;
}

namespace {

struct Evaluated {
    std::vector<LiftType> combo;
    LiftingNetwork network;
    QuantizedLiftingNetwork quantized;
    double gain = 0.0;
    double score = 0.0;
    bool positive_product = true;
};

bool evaluate(const rot::RotationCascade& cascade, const std::vector<LiftType>& combo, int l,
              const math::CorrelationModel& k, double klt, Evaluated& out) {
    try {
        out.network = cascade_to_lifting(cascade, combo);
    } catch (const SingularAngle&) {
        return false;
    }
    out.quantized = quantize_network(out.network, l);
    if (!parameters_in_range(out.quantized)) return false;
    try {
        out.gain = math::coding_gain(out.quantized.matrix(), k).value - klt;
    } catch (const DegenerateTransform&) {
        return false;
    }
    out.combo = combo;
    out.score = scale_score(out.network.branch_scales);
    double prod = 1.0;
    for (double b : out.network.branch_scales) prod *= b;
    out.positive_product = prod > 0.0;
    return true;
}

// Final ordering among candidates that are all within the gain slack.
bool preferred(const Evaluated& a, const Evaluated& b) {
    if (std::abs(a.score - b.score) > 1e-9) return a.score < b.score;
    if (a.positive_product != b.positive_product) return a.positive_product;
    if (std::abs(a.gain - b.gain) > 1e-12) return a.gain > b.gain;
    return a.combo < b.combo;
}

Design to_design(Evaluated e, double klt) {
    return {std::move(e.combo), std::move(e.network), std::move(e.quantized),
            math::CodingGainDb{e.gain + klt, klt}};
}

const LiftType kTwoLift[4] = {LiftType::Type1, LiftType::Type2, LiftType::Type3, LiftType::Type4};

}  // namespace

Design select_design(const rot::RotationCascade& cascade, int l, const DesignOptions& options) {
    const std::size_t L = cascade.rotations.size();
    if (L == 0) throw InvalidArgument("select_design needs a non-empty cascade");
    const auto k = math::residual_autocorrelation(options.rho, cascade.n);
    const double klt = klt_gain(k);

    if (L <= 8) {
        std::vector<Evaluated> feasible;
        std::vector<LiftType> combo(L, LiftType::Type1);
        const std::size_t total = std::size_t{1} << (2 * L);
        for (std::size_t code = 0; code < total; ++code) {
            for (std::size_t r = 0; r < L; ++r) combo[r] = kTwoLift[(code >> (2 * (L - 1 - r))) & 3];
            Evaluated e;
            if (evaluate(cascade, combo, l, k, klt, e)) feasible.push_back(std::move(e));
        }
        if (feasible.empty()) throw SingularAngle("every type combination hits a singular angle");
        double best_gain = feasible.front().gain;
        for (const auto& e : feasible) best_gain = std::max(best_gain, e.gain);
        const Evaluated* pick = nullptr;
        for (const auto& e : feasible) {
            if (e.gain < best_gain - options.gain_slack_db) continue;
            if (!pick || preferred(e, *pick)) pick = &e;
        }
        return to_design(*pick, klt);
    }

    // Too many rotations to enumerate: pick types so the quantized transform,
    // with its combined branch scales, is as close to orthogonal as possible.
    // Coordinate descent from each uniform assignment; best result wins.
    auto orth_error = [&](const Evaluated& e) {
        Matrix m = e.quantized.matrix();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const double b = e.network.branch_scales[static_cast<std::size_t>(e.network.output_permutation[r])];
            for (double& v : m.row(r)) v *= b;
        }
        const Matrix g = m * m.transposed();
        double acc = 0.0;
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c) {
                const double d = g(r, c) - (r == c ? 1.0 : 0.0);
                acc += d * d;
            }
        return acc;
    };

    Evaluated best;
    double best_err = 0.0;
    bool have_best = false;
    for (LiftType start : kTwoLift) {
        Evaluated current;
        if (!evaluate(cascade, std::vector<LiftType>(L, start), l, k, klt, current)) continue;
        double err = orth_error(current);
        for (int pass = 0; pass < 16; ++pass) {
            bool changed = false;
            for (std::size_t r = 0; r < L; ++r) {
                for (LiftType t : kTwoLift) {
                    if (t == current.combo[r]) continue;
                    auto trial = current.combo;
                    trial[r] = t;
                    Evaluated e;
                    if (!evaluate(cascade, trial, l, k, klt, e)) continue;
                    const double te = orth_error(e);
                    if (te < err - 1e-15) {
                        current = std::move(e);
                        err = te;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (!have_best || err < best_err - 1e-15 || (std::abs(err - best_err) <= 1e-15 && current.combo < best.combo)) {
            best = std::move(current);
            best_err = err;
            have_best = true;
        }
    }
    if (!have_best) throw SingularAngle("no uniform type assignment gives a feasible network");
    return to_design(std::move(best), klt);
}

QuantizedLiftingNetwork dct4_lifting_network() {
    const int l = 8;
    const double a = std::numbers::pi / 8.0;
    LiftingNetwork net;
    net.n = 4;
    net.steps = {
        {0, 3, -1.0}, {3, 0, 0.5},               // (x0, x3) sum/difference
        {1, 2, -1.0}, {2, 1, 0.5},               // (x1, x2)
        {0, 1, -1.0}, {1, 0, 0.5},               // even half: DC and X2
        {2, 3, std::tan(a)}, {3, 2, -std::sin(a) * std::cos(a)},  // odd-half rotation
    };
    net.output_permutation = {0, 3, 1, 2};
    net.branch_scales.assign(4, 1.0);

    auto q = quantize_network(net, l);
    const Matrix t = q.matrix();
    std::vector<double> scales(4, 1.0);
    for (std::size_t m = 0; m < 4; ++m) {
        double norm = 0.0;
        for (std::size_t c = 0; c < 4; ++c) norm += t(m, c) * t(m, c);
        scales[static_cast<std::size_t>(q.output_permutation[m])] = 1.0 / std::sqrt(norm);
    }
    q.branch_scales = scales;
    return q;
}

QuantizedLiftingNetwork order_outputs_by_variance(QuantizedLiftingNetwork q, const math::CorrelationModel& k) {
    if (q.n != k.size()) throw InvalidArgument("network size does not match the correlation model");
    const auto var = congruence_diagonal(q.matrix(), k.matrix());
    std::vector<std::size_t> order(q.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return var[a] > var[b]; });
    std::vector<int> perm(q.n);
    for (std::size_t m = 0; m < q.n; ++m) perm[m] = q.output_permutation[order[m]];
    q.output_permutation = std::move(perm);
    return q;
}

std::string serialize_network(const QuantizedLiftingNetwork& q) {
    std::string out = std::to_string(q.n) + " " + std::to_string(q.l) + " " + std::to_string(q.steps.size()) + "\n";
    for (const auto& s : q.steps)
        out += std::to_string(s.src + 1) + " " + std::to_string(s.dst + 1) + " " + std::to_string(s.k) + "\n";
    for (std::size_t m = 0; m < q.output_permutation.size(); ++m)
        out += (m ? " " : "") + std::to_string(q.output_permutation[m] + 1);
    out += "\n";
    char buf[40];
    for (std::size_t b = 0; b < q.branch_scales.size(); ++b) {
        std::snprintf(buf, sizeof buf, "%s%.17g", b ? " " : "", q.branch_scales[b]);
        out += buf;
    }
    out += "\n";
    return out;
}

QuantizedLiftingNetwork parse_network(const std::string& text) {
    std::istringstream in(text);
    QuantizedLiftingNetwork q;
    std::size_t count = 0;
    if (!(in >> q.n >> q.l >> count) || q.n == 0 || q.n > 64 || q.l < 0 || q.l > 52)
        throw FormatError("network: bad header");
    if (count > 4096) throw FormatError("network: too many steps");
    for (std::size_t s = 0; s < count; ++s) {
        QuantizedStep st;
        if (!(in >> st.src >> st.dst >> st.k)) throw FormatError("network: bad step line " + std::to_string(s + 1));
        st.src -= 1;
        st.dst -= 1;
        if (st.src < 0 || st.dst < 0 || st.src >= static_cast<int>(q.n) || st.dst >= static_cast<int>(q.n) ||
            st.src == st.dst)
            throw FormatError("network: step " + std::to_string(s + 1) + " has invalid branches");
        q.steps.push_back(st);
    }
    q.output_permutation.resize(q.n);
    for (auto& p : q.output_permutation) {
        if (!(in >> p)) throw FormatError("network: short permutation line");
        p -= 1;
    }
    try {
        check_permutation(q.output_permutation, q.n);
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("network: ") + e.what());
    }
    q.branch_scales.resize(q.n);
    for (auto& b : q.branch_scales)
        if (!(in >> b)) throw FormatError("network: short scale line");
    std::string extra;
    if (in >> extra) throw FormatError("network: trailing data");
    return q;
}

}  // namespace i2i::lift
