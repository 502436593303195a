// Copyright 2026 The flexjoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial vs OpenMP timings of the batch kernels and of a scenario comparison.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "flexjoint/harness.hpp"
#include "flexjoint/kernels.hpp"
#include "flexjoint/parameter_sets.hpp"

namespace flexjoint {
namespace {

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

std::vector<double> torsions(std::size_t n, double scale) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

void BM_ElasticTorque(benchmark::State& state, StiffnessLaw law) {
  const StiffnessParams p = parameter_set("kr300-joint1").joints[0].stiffness;
  const std::vector<double> in = torsions(static_cast<std::size_t>(state.range(0)), 20.0 * p.effective_backlash());
  std::vector<double> out(in.size());
  for (auto _ : state) {
    elastic_torque_batch(in, out, law, p, mode(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_InverseStiffness(benchmark::State& state) {
  const StiffnessParams p = parameter_set("kr300-joint1").joints[0].stiffness;
  const std::vector<double> in = torsions(static_cast<std::size_t>(state.range(0)), 5000.0);
  std::vector<double> out(in.size());
  for (auto _ : state) {
    inverse_stiffness_batch(in, out, p, mode(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FeedforwardTable(benchmark::State& state) {
  const std::vector<JointParams> params = parameter_set("kr300-all").joints;
  const ProfileTrajectory trajectory(profile_preset("demanding", params.size(), 1.0));
  std::vector<double> inertia;
  for (const JointParams& p : params) inertia.push_back(p.link_inertia);
  const ConstantProvider provider(inertia, std::vector<double>(params.size(), 300.0));
  std::vector<double> times(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = 7.0 * static_cast<double>(k) / times.size();
  for (auto _ : state) {
    benchmark::DoNotOptimize(feedforward_table(trajectory, provider, params, times, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Compare(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.model = parameter_set("kr300-joint1").joints;
  cfg.duration = 2.0;
  const std::vector<ControllerSelection> variants = {{FeedforwardMode::flatness, FeedbackMode::none},
                                                     {FeedforwardMode::rigid, FeedbackMode::none},
                                                     {FeedforwardMode::flatness, FeedbackMode::conventional},
                                                     {FeedforwardMode::flatness, FeedbackMode::model_based}};
  for (auto _ : state) benchmark::DoNotOptimize(compare(cfg, variants, mode(state)));
}

BENCHMARK_CAPTURE(BM_ElasticTorque, piecewise, StiffnessLaw::piecewise)->ArgsProduct({{1 << 16}, {0, 1}});
BENCHMARK_CAPTURE(BM_ElasticTorque, smooth, StiffnessLaw::smooth)->ArgsProduct({{1 << 16}, {0, 1}});
BENCHMARK_CAPTURE(BM_ElasticTorque, inverse_consistent, StiffnessLaw::inverse_consistent)
    ->ArgsProduct({{1 << 16}, {0, 1}});
BENCHMARK(BM_InverseStiffness)->ArgsProduct({{1 << 16}, {0, 1}});
BENCHMARK(BM_FeedforwardTable)->ArgsProduct({{8750}, {0, 1}});
BENCHMARK(BM_Compare)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace flexjoint

BENCHMARK_MAIN();
