// Copyright 2026 The streamsong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "streamsong/datasets.hpp"
#include "streamsong/neural_gas.hpp"
#include "streamsong/possibilistic.hpp"
#include "streamsong/sp1m.hpp"
#include "streamsong/stream_engine.hpp"

namespace {

using namespace streamsong;

LabeledStream dataset(int id) {
  BenchmarkSpec spec;
  spec.dataset_id = id;
  spec.seed = 11;
  return make_benchmark(spec);
}

void BM_ClassTypicalities(benchmark::State& state) {
  const auto ls = dataset(1);
  const Model model = initialize(ls.init, HyperParams{}, 11);
  const auto points = ls.stream_points();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(class_typicalities(points[i++ % points.size()], model));
  }
}
BENCHMARK(BM_ClassTypicalities);

void BM_ProcessPoint(benchmark::State& state) {
  const auto ls = dataset(static_cast<int>(state.range(0)));
  const auto points = ls.stream_points();
  for (auto _ : state) {
    state.PauseTiming();
    auto engine = StreamEngine::from_labeled(ls.init, HyperParams{}, 11);
    state.ResumeTiming();
    for (const auto& x : points) benchmark::DoNotOptimize(engine.process_point(x));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_ProcessPoint)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_TrainNg(benchmark::State& state) {
  Rng rng(3);
  const FeatureVector mean{0.0, 0.0}, var{4.0, 4.0};
  const auto points = gen_gaussian_class(mean, var, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(train_ng(points, 10, NgSchedule{}, 5));
}
BENCHMARK(BM_TrainNg)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_P1m(benchmark::State& state) {
  Rng rng(3);
  const FeatureVector mean{0.0, 0.0}, var{4.0, 4.0};
  const auto points = gen_gaussian_class(mean, var, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(p1m(points, 0, 1.5, 1e-4, 100));
}
BENCHMARK(BM_P1m)->Arg(60)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
