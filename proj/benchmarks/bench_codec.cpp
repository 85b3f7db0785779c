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

#include <string>

#include "i2i/codec/codec.hpp"

using namespace i2i;

namespace {

const codec::Frame& camera() {
    static const auto f = codec::read_pgm(std::string(I2I_BENCH_CORPUS_DIR) + "/camera.pgm");
    return f;
}

void BM_Encode(benchmark::State& state) {
    const auto p = codec::kAllProfiles[state.range(0)];
    state.SetLabel(std::string(codec::to_string(p)));
    for (auto _ : state) benchmark::DoNotOptimize(codec::encode_frame(camera(), p));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(camera().plane.size()));
}
BENCHMARK(BM_Encode)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Decode(benchmark::State& state) {
    const auto p = codec::kAllProfiles[state.range(0)];
    state.SetLabel(std::string(codec::to_string(p)));
    const auto bytes = codec::encode_frame(camera(), p).bytes;
    for (auto _ : state) benchmark::DoNotOptimize(codec::decode_frame(bytes));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(camera().plane.size()));
}
BENCHMARK(BM_Decode)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

}  // namespace
