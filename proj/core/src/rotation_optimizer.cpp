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

#include "i2i/rotation_optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "i2i/error.hpp"

namespace i2i::rot {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kBound = kHalfPi - 1e-9;
constexpr double kDbPerNeper = 10.0 / std::numbers::ln10;

void check_rotation(const PlaneRotation& r, std::size_t n) {
    const int nn = static_cast<int>(n);
    if (r.i < 1 || r.j < 1 || r.i > nn || r.j > nn || r.i == r.j)
        throw InvalidArgument("rotation (" + std::to_string(r.i) + "," + std::to_string(r.j) +
                              ") is not a valid branch pair for n=" + std::to_string(n));
}

void check_pair(const BranchPair& p, std::size_t n) {
    if (p.i >= p.j) throw InvalidArgument("branch pair must satisfy i < j");
    check_rotation({p.i, p.j, 0.0}, n);
}

bool disjoint(const BranchPair& a, const BranchPair& b) {
    return a.i != b.i && a.i != b.j && a.j != b.i && a.j != b.j;
}

// Mean log coefficient variance of a pair sequence at given signed angles.
class Objective {
public:
    Objective(const std::vector<BranchPair>& pairs, const math::CorrelationModel& k)
        : n_(k.size()), pairs_(pairs), k_(k.matrix().data().begin(), k.matrix().data().end()),
          t_(n_ * n_) {}

    std::size_t dim() const { return pairs_.size(); }

    double operator()(const std::vector<double>& theta) const {
        std::fill(t_.begin(), t_.end(), 0.0);
        for (std::size_t d = 0; d < n_; ++d) t_[d * n_ + d] = 1.0;
        for (std::size_t s = 0; s < pairs_.size(); ++s) {
            const double c = std::cos(theta[s]);
            const double sn = std::sin(theta[s]);
            double* ri = &t_[(pairs_[s].i - 1) * n_];
            double* rj = &t_[(pairs_[s].j - 1) * n_];
            for (std::size_t q = 0; q < n_; ++q) {
                const double a = ri[q];
                const double b = rj[q];
                ri[q] = c * a + sn * b;
                rj[q] = -sn * a + c * b;
            }
        }
        double acc = 0.0;
        for (std::size_t r = 0; r < n_; ++r) {
            const double* row = &t_[r * n_];
            double var = 0.0;
            for (std::size_t a = 0; a < n_; ++a) {
                if (row[a] == 0.0) continue;
                double inner = 0.0;
                for (std::size_t b = 0; b < n_; ++b) inner += k_[a * n_ + b] * row[b];
                var += row[a] * inner;
            }
            acc += std::log(std::max(var, 1e-300));
        }
        return acc / static_cast<double>(n_);
    }

private:
    std::size_t n_;
    std::vector<BranchPair> pairs_;
    std::vector<double> k_;
    mutable std::vector<double> t_;
};

double clip(double v) { return std::clamp(v, -kBound, kBound); }

void golden_coordinate(const Objective& f, std::vector<double>& x, std::size_t d, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -kBound;
    double b = kBound;
    auto eval = [&](double v) {
        x[d] = v;
        return f(x);
    };
    const double keep = x[d];
    const double f_keep = eval(keep);
    double c = b - invphi * (b - a);
    double e = a + invphi * (b - a);
    double fc = eval(c);
    double fe = eval(e);
    while (b - a > tol) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - invphi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + invphi * (b - a);
            fe = eval(e);
        }
    }
    const double best = fc < fe ? c : e;
    const double f_best = std::min(fc, fe);
    x[d] = f_best < f_keep ? best : keep;
}

std::vector<double> gradient(const Objective& f, std::vector<double> x) {
    const double h = 1e-6;
    std::vector<double> g(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double keep = x[d];
        x[d] = keep + h;
        const double fp = f(x);
        x[d] = keep - h;
        const double fm = f(x);
        x[d] = keep;
        g[d] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// Projected BFGS on the box (-pi/2, pi/2)^L.
void bfgs_polish(const Objective& f, std::vector<double>& x, double tol) {
    const std::size_t m = x.size();
    std::vector<double> h(m * m, 0.0);
    auto reset = [&] {
        std::fill(h.begin(), h.end(), 0.0);
        for (std::size_t d = 0; d < m; ++d) h[d * m + d] = 1.0;
    };
    reset();
    double fx = f(x);
    auto g = gradient(f, x);

    for (int iter = 0; iter < 300; ++iter) {
        double gmax = 0.0;
        for (double v : g) gmax = std::max(gmax, std::abs(v));
        if (gmax < 1e-11) break;

        std::vector<double> dir(m, 0.0);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) dir[r] -= h[r * m + c] * g[c];
        double slope = 0.0;
        for (std::size_t d = 0; d < m; ++d) slope += dir[d] * g[d];
        if (slope >= 0.0) {
            reset();
            for (std::size_t d = 0; d < m; ++d) dir[d] = -g[d];
        }

        std::vector<double> xn(m);
        double fn = fx;
        bool accepted = false;
        for (double t = 1.0; t > 1e-12; t *= 0.5) {
            double decrease = 0.0;
            for (std::size_t d = 0; d < m; ++d) {
                xn[d] = clip(x[d] + t * dir[d]);
                decrease += g[d] * (xn[d] - x[d]);
            }
            fn = f(xn);
            if (fn <= fx + 1e-4 * decrease) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;

        std::vector<double> s(m);
        double smax = 0.0;
        for (std::size_t d = 0; d < m; ++d) {
            s[d] = xn[d] - x[d];
            smax = std::max(smax, std::abs(s[d]));
        }
        auto gn = gradient(f, xn);
        std::vector<double> y(m);
        double sy = 0.0;
        for (std::size_t d = 0; d < m; ++d) {
            y[d] = gn[d] - g[d];
            sy += s[d] * y[d];
        }
        x = xn;
        fx = fn;
        g = gn;
        if (smax < tol) break;
        if (sy <= 1e-16) {
            reset();
            continue;
        }

        const double rho = 1.0 / sy;
        std::vector<double> hy(m, 0.0);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) hy[r] += h[r * m + c] * y[c];
        double yhy = 0.0;
        for (std::size_t d = 0; d < m; ++d) yhy += y[d] * hy[d];
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                h[r * m + c] += (1.0 + rho * yhy) * rho * s[r] * s[c] -
                                rho * (hy[r] * s[c] + s[r] * hy[c]);
    }
}

struct Candidate {
    std::vector<PlaneRotation> rotations;
    std::vector<double> angles;
    double objective = 0.0;  // mean log variance, smaller is better
    bool valid = false;
};

bool lex_less(const std::vector<PlaneRotation>& a, const std::vector<PlaneRotation>& b) {
    for (std::size_t s = 0; s < std::min(a.size(), b.size()); ++s) {
        if (a[s].i != b[s].i) return a[s].i < b[s].i;
        if (a[s].j != b[s].j) return a[s].j < b[s].j;
        if (std::abs(a[s].alpha - b[s].alpha) > 1e-6) return a[s].alpha < b[s].alpha;
    }
    return a.size() < b.size();
}

// True when `c` should replace `best`.
bool better(const Candidate& c, const Candidate& best, double tie_db) {
    if (!best.valid) return true;
    const double diff_db = kDbPerNeper * (best.objective - c.objective);
    if (diff_db > tie_db) return true;
    if (diff_db < -tie_db) return false;
    return lex_less(c.rotations, best.rotations);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Candidate fit_sequence(const std::vector<BranchPair>& pairs, const math::CorrelationModel& k,
                       const OptimizerConfig& config, std::uint64_t stream,
                       const std::vector<double>* warm_start = nullptr) {
    Objective f(pairs, k);
    std::mt19937_64 rng(mix_seed(config.seed, stream));
    std::uniform_real_distribution<double> uni(-kBound, kBound);
    Candidate best;

    const int starts = config.restarts + (warm_start ? 1 : 0);
    for (int r = 0; r < starts; ++r) {
        std::vector<double> x(pairs.size());
        if (warm_start && r == 0) {
            x = *warm_start;
            x.resize(pairs.size(), 0.0);
        } else {
            for (auto& v : x) v = uni(rng);
        }
        for (int pass = 0; pass < 3; ++pass)
            for (std::size_t d = 0; d < x.size(); ++d) golden_coordinate(f, x, d, 1e-4);
        bfgs_polish(f, x, config.angle_tolerance);

        Candidate c;
        c.angles = x;
        c.objective = f(x);
        c.valid = true;
        for (std::size_t s = 0; s < pairs.size(); ++s) c.rotations.push_back(orient(pairs[s], x[s]));

        // A quarter-turn on the last rotation only swaps (and negates) two
        // outputs, so its twin has the same gain and competes on the tie-break.
        Candidate twin = c;
        double& last = twin.angles.back();
        last += last > 0.0 ? -kHalfPi : kHalfPi;
        if (std::abs(last) < kBound) {
            twin.objective = f(twin.angles);
            twin.rotations.back() = orient(pairs.back(), last);
            if (better(twin, c, config.tie_tolerance_db)) c = std::move(twin);
        }
        if (better(c, best, config.tie_tolerance_db)) best = std::move(c);
    }
    return best;
}

double klt_gain(const math::CorrelationModel& k) {
    return math::coding_gain(math::klt_matrix(k), k).value;
}

void validate_config(const OptimizerConfig& config) {
    if (config.restarts < 1) throw InvalidArgument("optimizer needs at least one restart");
    if (!(config.angle_tolerance > 0.0)) throw InvalidArgument("angle tolerance must be positive");
}

double binomial2(std::size_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; }

std::vector<BranchPair> all_pairs(std::size_t n) {
    std::vector<BranchPair> out;
    for (int i = 1; i <= static_cast<int>(n); ++i)
        for (int j = i + 1; j <= static_cast<int>(n); ++j) out.push_back({i, j});
    return out;
}

// Perfect matchings of {1..n} (n even) with pairs in increasing order.
void matchings(std::vector<int>& free, std::vector<BranchPair>& cur,
               std::vector<std::vector<BranchPair>>& out) {
    if (free.empty()) {
        auto sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(sorted);
        return;
    }
    const int first = free.front();
    for (std::size_t t = 1; t < free.size(); ++t) {
        const int partner = free[t];
        std::vector<int> rest;
        for (std::size_t u = 1; u < free.size(); ++u)
            if (u != t) rest.push_back(free[u]);
        cur.push_back({first, partner});
        matchings(rest, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<BranchPair> RotationCascade::pairs() const {
    std::vector<BranchPair> out;
    for (const auto& r : rotations) out.push_back({std::min(r.i, r.j), std::max(r.i, r.j)});
    return out;
}

PlaneRotation orient(BranchPair pair, double signed_angle) {
    if (signed_angle >= 0.0) return {pair.i, pair.j, signed_angle};
    return {pair.j, pair.i, -signed_angle};
}

math::TransformMatrix rotation_matrix(const PlaneRotation& rot, std::size_t n) {
    check_rotation(rot, n);
    Matrix m = Matrix::identity(n);
    const auto i = static_cast<std::size_t>(rot.i - 1);
    const auto j = static_cast<std::size_t>(rot.j - 1);
    const double c = std::cos(rot.alpha);
    const double s = std::sin(rot.alpha);
    m(i, i) = c;
    m(j, j) = c;
    m(i, j) = s;
    m(j, i) = -s;
    return {math::TransformKind::Cascade, std::move(m)};
}

math::TransformMatrix cascade_matrix(const RotationCascade& cascade) {
    const std::size_t n = cascade.n;
    if (cascade.rotations.empty()) throw InvalidArgument("cascade must contain at least one rotation");
    Matrix t = Matrix::identity(n);
    for (const auto& r : cascade.rotations) {
        check_rotation(r, n);
        const double c = std::cos(r.alpha);
        const double s = std::sin(r.alpha);
        auto ri = t.row(static_cast<std::size_t>(r.i - 1));
        auto rj = t.row(static_cast<std::size_t>(r.j - 1));
        for (std::size_t q = 0; q < n; ++q) {
            const double a = ri[q];
            const double b = rj[q];
            ri[q] = c * a + s * b;
            rj[q] = -s * a + c * b;
        }
    }
    if (cascade.output_order.empty() && cascade.output_sign.empty())
        return {math::TransformKind::Cascade, std::move(t)};

    if ((!cascade.output_order.empty() && cascade.output_order.size() != n) ||
        (!cascade.output_sign.empty() && cascade.output_sign.size() != n))
        throw InvalidArgument("cascade output map has the wrong length");
    Matrix out(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto src = cascade.output_order.empty() ? m : static_cast<std::size_t>(cascade.output_order[m]);
        const double sign = cascade.output_sign.empty() ? 1.0 : cascade.output_sign[m];
        if (src >= n) throw InvalidArgument("cascade output order out of range");
        for (std::size_t q = 0; q < n; ++q) out(m, q) = sign * t(src, q);
    }
    return {math::TransformKind::Cascade, std::move(out)};
}

AngleFit optimize_angles(const std::vector<BranchPair>& pairs, const math::CorrelationModel& k,
                         const OptimizerConfig& config) {
    validate_config(config);
    if (pairs.empty()) throw InvalidArgument("optimize_angles needs at least one pair");
    for (const auto& p : pairs) check_pair(p, k.size());

    const Candidate best = fit_sequence(pairs, k, config, 0);
    RotationCascade c{k.size(), best.rotations, {}, {}, {}};
    AngleFit fit;
    fit.rotations = best.rotations;
    fit.signed_angles = best.angles;
    fit.gain = math::coding_gain(cascade_matrix(c), k).relative_to(klt_gain(k));
    return fit;
}

bool stage_groupable(const std::vector<BranchPair>& pairs, std::size_t n) {
    const std::size_t stage = std::max<std::size_t>(1, n / 2);
    for (std::size_t start = 0; start < pairs.size(); start += stage) {
        const std::size_t end = std::min(pairs.size(), start + stage);
        for (std::size_t a = start; a < end; ++a)
            for (std::size_t b = a + 1; b < end; ++b)
                if (!disjoint(pairs[a], pairs[b])) return false;
    }
    return true;
}

std::vector<std::vector<BranchPair>> enumerate_pair_sequences(std::size_t n, std::size_t L,
                                                              bool parallel_only) {
    std::vector<std::vector<BranchPair>> out;
    if (n < 2 || L == 0) return out;

    if (parallel_only) {
        if (n % 2 != 0) throw InvalidArgument("parallel-only search needs an even block length");
        std::vector<int> free;
        for (int b = 1; b <= static_cast<int>(n); ++b) free.push_back(b);
        std::vector<BranchPair> cur;
        std::vector<std::vector<BranchPair>> stages;
        matchings(free, cur, stages);
        std::sort(stages.begin(), stages.end());

        const std::size_t per = n / 2;
        const std::size_t full = L / per;
        const std::size_t tail = L % per;
        std::vector<std::vector<BranchPair>> partial{{}};
        for (std::size_t s = 0; s < full; ++s) {
            std::vector<std::vector<BranchPair>> next;
            for (const auto& seq : partial)
                for (const auto& st : stages) {
                    auto grown = seq;
                    grown.insert(grown.end(), st.begin(), st.end());
                    next.push_back(std::move(grown));
                }
            partial = std::move(next);
        }
        if (tail) {
            // A short final stage: every increasing selection of `tail` disjoint pairs.
            std::vector<std::vector<BranchPair>> lasts;
            for (const auto& st : stages) {
                std::vector<bool> pick(st.size(), false);
                std::fill(pick.begin(), pick.begin() + static_cast<long>(tail), true);
                do {
                    std::vector<BranchPair> sel;
                    for (std::size_t q = 0; q < st.size(); ++q)
                        if (pick[q]) sel.push_back(st[q]);
                    lasts.push_back(sel);
                } while (std::prev_permutation(pick.begin(), pick.end()));
            }
            std::sort(lasts.begin(), lasts.end());
            lasts.erase(std::unique(lasts.begin(), lasts.end()), lasts.end());
            std::vector<std::vector<BranchPair>> next;
            for (const auto& seq : partial)
                for (const auto& last : lasts) {
                    auto grown = seq;
                    grown.insert(grown.end(), last.begin(), last.end());
                    next.push_back(std::move(grown));
                }
            partial = std::move(next);
        }
        return partial;
    }

    // Adjacent repeats merge into one rotation, and adjacent disjoint pairs
    // commute, so only one order of each such neighbor is kept.
    const auto pairs = all_pairs(n);
    std::vector<BranchPair> cur;
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == L) {
            out.push_back(cur);
            return;
        }
        for (const auto& p : pairs) {
            if (!cur.empty()) {
                const auto& prev = cur.back();
                if (p == prev) continue;
                if (disjoint(p, prev) && p < prev) continue;
            }
            cur.push_back(p);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

RotationCascade search_cascade(std::size_t n, std::size_t L, const math::CorrelationModel& k,
                               const OptimizerConfig& config) {
    validate_config(config);
    if (k.size() != n) throw InvalidArgument("correlation size does not match n");
    if (n < 2) throw InvalidArgument("search_cascade needs n >= 2");
    if (L < 1) throw InvalidArgument("search_cascade needs L >= 1");

    Candidate best;
    if (config.greedy) {
        std::vector<BranchPair> prefix;
        std::vector<double> angles;
        const auto pairs = all_pairs(n);
        for (std::size_t step = 0; step < L; ++step) {
            Candidate stage_best;
            std::vector<BranchPair> stage_pairs;
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                if (!prefix.empty() && pairs[q] == prefix.back()) continue;
                auto trial = prefix;
                trial.push_back(pairs[q]);
                auto c = fit_sequence(trial, k, config, step * pairs.size() + q, &angles);
                if (better(c, stage_best, config.tie_tolerance_db)) {
                    stage_best = std::move(c);
                    stage_pairs = trial;
                }
            }
            prefix = stage_pairs;
            angles = stage_best.angles;
            best = std::move(stage_best);
        }
    } else {
        const double space = std::pow(binomial2(n), static_cast<double>(L));
        if (n > 4 || space > config.max_search_points) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "exhaustive search over C(%zu,2)^%zu = %.4g branch-pair sequences exceeds the budget",
                          n, L, space);
            throw SearchBudgetExceeded(msg, space);
        }
        const auto seqs = enumerate_pair_sequences(n, L, config.parallel_only);
        for (std::size_t s = 0; s < seqs.size(); ++s) {
            auto c = fit_sequence(seqs[s], k, config, s);
            if (better(c, best, config.tie_tolerance_db)) best = std::move(c);
        }
    }
    if (!best.valid) throw InvalidArgument("search space is empty");

    RotationCascade out{n, best.rotations, {}, {}, {}};
    out.gain = math::coding_gain(cascade_matrix(out), k).relative_to(klt_gain(k));
    return out;
}

namespace {

// Tracks where each logical signal lives: value(logical) = sign * physical[branch].
class SignedPermutation {
public:
    explicit SignedPermutation(std::size_t n) : where_(n), sign_(n, 1) {}

    void place(int logical, int phys, int sign) {
        where_[logical] = phys;
        sign_[logical] = sign;
    }
    int where(int logical) const { return where_[logical]; }
    int sign(int logical) const { return sign_[logical]; }
    void negate(int logical) { sign_[logical] = -sign_[logical]; }

    // Relabels after a virtual quarter-turn on physical (lo, hi): lo' = hi, hi' = -lo.
    void quarter_turn(int lo, int hi) {
        for (std::size_t l = 0; l < where_.size(); ++l) {
            if (where_[l] == lo) {
                where_[l] = hi;
            } else if (where_[l] == hi) {
                where_[l] = lo;
                sign_[l] = -sign_[l];
            }
        }
    }

private:
    std::vector<int> where_;
    std::vector<int> sign_;
};

class FlowGraph {
public:
    explicit FlowGraph(std::size_t n) : n_(n), perm_(n) {}

    SignedPermutation& perm() { return perm_; }
    std::vector<PlaneRotation>& rotations() { return rotations_; }

    // a' = cos(phi) a + sin(phi) b, b' = -sin(phi) a + cos(phi) b on logical signals.
    void rotate(int a, int b, double phi) {
        const int pa = perm_.where(a);
        const int pb = perm_.where(b);
        phi *= perm_.sign(a) * perm_.sign(b);
        const int lo = std::min(pa, pb);
        const int hi = std::max(pa, pb);
        double theta = pa < pb ? phi : -phi;
        theta = std::remainder(theta, 2.0 * std::numbers::pi);
        const long quarter = std::lround(theta / kHalfPi);
        const double rest = theta - static_cast<double>(quarter) * kHalfPi;
        if (std::abs(rest) > 1e-14) rotations_.push_back(orient({lo + 1, hi + 1}, rest));
        const long turns = ((quarter % 4) + 4) % 4;
        for (long t = 0; t < turns; ++t) perm_.quarter_turn(lo, hi);
    }

    // (u, v) -> ((u + v)/sqrt2, (u - v)/sqrt2)
    void butterfly(int u, int v) {
        rotate(u, v, std::numbers::pi / 4.0);
        perm_.negate(v);
    }

private:
    std::size_t n_;
    SignedPermutation perm_;
    std::vector<PlaneRotation> rotations_;
};

struct ComplexHandle {
    int re;
    int im;
};

// Unitary radix-2 decimation-in-time DFT, operating on handles in place.
std::vector<ComplexHandle> unitary_fft(FlowGraph& g, const std::vector<ComplexHandle>& x) {
    const std::size_t m = x.size();
    if (m == 1) return x;
    std::vector<ComplexHandle> even, odd;
    for (std::size_t q = 0; q < m; ++q) (q % 2 ? odd : even).push_back(x[q]);
    auto e = unitary_fft(g, even);
    auto o = unitary_fft(g, odd);
    std::vector<ComplexHandle> out(m);
    for (std::size_t q = 0; q < m / 2; ++q) {
        g.rotate(o[q].re, o[q].im, 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(m));
        g.butterfly(e[q].re, o[q].re);
        g.butterfly(e[q].im, o[q].im);
        out[q] = e[q];
        out[q + m / 2] = o[q];
    }
    return out;
}

}  // namespace

RotationCascade edst3_rotation_factorization(std::size_t n) {
    if (n < 4 || n > 32 || (n & (n - 1)) != 0)
        throw InvalidArgument("EDST-3 factorization needs n in {4, 8, 16, 32}, got " + std::to_string(n));
    const int N = static_cast<int>(n);
    const std::size_t half = n / 2;
    const double dn = static_cast<double>(n);

    // The EDST-3 equals diag((-1)^m) * DCT-IV * reversal; logical signal k is
    // the reversed input x[N-1-k].
    FlowGraph g(n);
    for (int k = 0; k < N; ++k) g.perm().place(k, N - 1 - k, 1);

    std::vector<ComplexHandle> v(half);
    for (std::size_t q = 0; q < half; ++q) {
        v[q] = {static_cast<int>(2 * q), N - 1 - static_cast<int>(2 * q)};
        g.rotate(v[q].re, v[q].im, std::numbers::pi * (4.0 * static_cast<double>(q) + 1.0) / (4.0 * dn));
    }
    auto w = unitary_fft(g, v);
    for (std::size_t q = 0; q < half; ++q)
        g.rotate(w[q].re, w[q].im, std::numbers::pi * static_cast<double>(q) / dn);

    RotationCascade out;
    out.n = n;
    out.rotations = g.rotations();
    out.output_order.resize(n);
    out.output_sign.resize(n);
    for (int m = 0; m < N; ++m) {
        int logical;
        int sign;
        if (m % 2 == 0) {
            logical = w[static_cast<std::size_t>(m / 2)].re;
            sign = 1;
        } else {
            logical = w[static_cast<std::size_t>((N - 1 - m) / 2)].im;
            sign = -1;
        }
        if (m % 2) sign = -sign;
        out.output_order[m] = g.perm().where(logical);
        out.output_sign[m] = sign * g.perm().sign(logical);
    }
    return out;
}

std::string serialize_cascade(const RotationCascade& cascade) {
    std::string out = std::to_string(cascade.n) + " " + std::to_string(cascade.rotations.size()) + "\n";
    char buf[96];
    for (std::size_t k = 0; k < cascade.rotations.size(); ++k) {
        const auto& r = cascade.rotations[k];
        std::snprintf(buf, sizeof buf, "%zu %d %d %.17g\n", k + 1, r.i, r.j, r.alpha);
        out += buf;
    }
    if (!cascade.output_order.empty()) {
        out += "order";
        for (int v : cascade.output_order) out += " " + std::to_string(v + 1);
        out += "\n";
    }
    if (!cascade.output_sign.empty()) {
        out += "signs";
        for (int v : cascade.output_sign) out += v < 0 ? " -1" : " 1";
        out += "\n";
    }
    return out;
}

RotationCascade parse_cascade(const std::string& text) {
    std::istringstream in(text);
    RotationCascade c;
    std::size_t count = 0;
    if (!(in >> c.n >> count) || c.n == 0) throw FormatError("cascade: bad header");
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t idx;
        PlaneRotation r;
        if (!(in >> idx >> r.i >> r.j >> r.alpha) || idx != k + 1)
            throw FormatError("cascade: bad rotation line " + std::to_string(k + 1));
        check_rotation(r, c.n);
        c.rotations.push_back(r);
    }
    std::string tag;
    while (in >> tag) {
        std::vector<int>* dst = nullptr;
        if (tag == "order") dst = &c.output_order;
        else if (tag == "signs") dst = &c.output_sign;
        else throw FormatError("cascade: unexpected token '" + tag + "'");
        for (std::size_t m = 0; m < c.n; ++m) {
            int v;
            if (!(in >> v)) throw FormatError("cascade: short " + tag + " line");
            if (tag == "order") {
                if (v < 1 || v > static_cast<int>(c.n)) throw FormatError("cascade: order entry out of range");
                v -= 1;
            } else if (v != 1 && v != -1) {
                throw FormatError("cascade: sign must be 1 or -1");
            }
            dst->push_back(v);
        }
    }
    return c;
}

}  // namespace i2i::rot
