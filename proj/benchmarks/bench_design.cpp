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

#include <benchmark/benchmark.h>

#include "i2i/lifting_designer.hpp"
#include "i2i/rotation_optimizer.hpp"
#include "i2i/transforms_math.hpp"

using namespace i2i;

namespace {

void BM_CodingGain(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = math::residual_autocorrelation(0.95, n);
    const auto t = math::odst3_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(math::coding_gain(t, k));
}
BENCHMARK(BM_CodingGain)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Klt(benchmark::State& state) {
    const auto k = math::residual_autocorrelation(0.95, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(math::klt_matrix(k));
}
BENCHMARK(BM_Klt)->Arg(4)->Arg(16)->Arg(32);

void BM_OptimizeAngles(benchmark::State& state) {
    const auto k = math::residual_autocorrelation(0.95, 4);
    const std::vector<rot::BranchPair> pairs = {{1, 4}, {2, 4}, {2, 3}, {1, 2}};
    for (auto _ : state) benchmark::DoNotOptimize(rot::optimize_angles(pairs, k, {}));
}
BENCHMARK(BM_OptimizeAngles)->Unit(benchmark::kMillisecond);

void BM_SearchCascade(benchmark::State& state) {
    const auto k = math::residual_autocorrelation(0.95, 4);
    const auto L = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rot::search_cascade(4, L, k, {}));
}
BENCHMARK(BM_SearchCascade)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SelectDesign(benchmark::State& state) {
    const auto k = math::residual_autocorrelation(0.95, 4);
    const auto c = rot::search_cascade(4, 4, k, {});
    for (auto _ : state) benchmark::DoNotOptimize(lift::select_design(c, 3));
}
BENCHMARK(BM_SelectDesign)->Unit(benchmark::kMillisecond);

}  // namespace
