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

#include <random>
#include <vector>

#include "i2i/codec/codec.hpp"
#include "i2i/i2i_exec.hpp"

using namespace i2i;

namespace {

const exec::I2ITransform& transform(std::size_t n) {
    static const exec::I2ITransform t4(codec::default_networks().dst4);
    static const exec::I2ITransform t8(codec::default_networks().dst8);
    return n == 4 ? t4 : t8;
}

exec::ResidualBlock random_block(int n) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-255, 255);
    exec::ResidualBlock b(n, n);
    for (auto& v : b.samples) v = d(rng);
    return b;
}

void BM_Forward1D(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto& t = transform(n);
    auto b = random_block(static_cast<int>(n));
    for (auto _ : state) {
        t.forward_strided(b.samples.data(), 1);
        benchmark::DoNotOptimize(b.samples.data());
        t.inverse_strided(b.samples.data(), 1);
    }
    state.SetItemsProcessed(2 * state.iterations());
}
BENCHMARK(BM_Forward1D)->Arg(4)->Arg(8);

void BM_Forward2D(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto& t = transform(static_cast<std::size_t>(n));
    const auto b = random_block(n);
    for (auto _ : state) benchmark::DoNotOptimize(exec::forward_i2i_2d(t, b));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Forward2D)->Arg(4)->Arg(8);

void BM_Inverse2D(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto& t = transform(static_cast<std::size_t>(n));
    const auto y = exec::forward_i2i_2d(t, random_block(n));
    for (auto _ : state) benchmark::DoNotOptimize(exec::inverse_i2i_2d(t, y));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Inverse2D)->Arg(4)->Arg(8);

}  // namespace
