/*
 * Copyright 2026 The pfloc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <benchmark/benchmark.h>

#include <random>

#include "pfloc/grid_oracle.hpp"
#include "pfloc/particle_filter.hpp"
#include "pfloc/sim.hpp"

namespace {

using namespace pfloc;

const ScenarioConfig& scenario() {
  static const ScenarioConfig s = default_scenario();
  return s;
}

static void BM_NearestLandmark(benchmark::State& state) {
  const FingerprintMap& map = *scenario().map;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::vector<Point2> queries(1024);
  for (Point2& q : queries) q = {coord(rng), coord(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.nearest_landmark(queries[i++ & 1023]));
  }
}
BENCHMARK(BM_NearestLandmark);

static void BM_FilterStep(benchmark::State& state) {
  const ScenarioConfig& s = scenario();
  FilterConfig cfg;
  cfg.n_particles = static_cast<std::size_t>(state.range(0));
  ParticleFilter pf(cfg, 10, 10);
  Rng world(2);
  const RssVector obs = simulate_measurement(s.radio, s.ap_positions, {2.4, 3.6}, 2.0, world);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf.step(*s.map, {0, 0}, obs));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterStep)->Arg(300)->Arg(1000)->Arg(10000);

static void BM_ResampleMultinomial(benchmark::State& state) {
  FilterConfig cfg;
  cfg.n_particles = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  ParticleSet set = init_particles(cfg, 10, 10, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resample_multinomial(set, rng));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ResampleMultinomial)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

static void BM_Trial(benchmark::State& state) {
  ScenarioConfig s = scenario();
  s.filter.n_particles = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(s, seed++));
  }
}
BENCHMARK(BM_Trial)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_GridPosterior(benchmark::State& state) {
  const ScenarioConfig& s = scenario();
  Rng rng(4);
  const RssVector obs = simulate_measurement(s.radio, s.ap_positions, {2.4, 3.6}, 0.0, rng);
  const double cell = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_posterior(*s.map, obs, 4.0, cell));
  }
}
BENCHMARK(BM_GridPosterior)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
