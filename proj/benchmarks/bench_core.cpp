// Copyright 2026 The unilearn Authors
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

#include <vector>

#include <benchmark/benchmark.h>

#include "unilearn/ansatz.hpp"
#include "unilearn/datasets.hpp"
#include "unilearn/gradient.hpp"
#include "unilearn/hamsim.hpp"
#include "unilearn/metrics.hpp"
#include "unilearn/random.hpp"

namespace {

using namespace unilearn;

std::vector<double> angles(std::size_t count, std::uint64_t seed) {
    RngStream rng(seed, "bench-angles");
    std::vector<double> out(count);
    for (double& a : out) {
        a = rng.uniform(0.0, 6.283185307179586);
    }
    return out;
}

void BM_CircuitMatrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const AnsatzSpec spec{n, default_layers(n)};
    const Circuit c = build_ansatz(spec, angles(spec.num_parameters(), 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(circuit_matrix(c));
    }
}
BENCHMARK(BM_CircuitMatrix)->DenseRange(3, 5);

void BM_TraceDistance(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    RngStream rng(2, "bench-states");
    const DensityMatrix a = hs_random_density(n, rng);
    const DensityMatrix b = hs_random_density(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_distance(a, b));
    }
}
BENCHMARK(BM_TraceDistance)->DenseRange(1, 6);

void BM_EmpiricalRiskGradient(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const AnsatzSpec spec{n, default_layers(n)};
    const Circuit c = build_ansatz(spec, angles(spec.num_parameters(), 3));
    const UnitaryMatrix target = exact_evolution(HeisenbergSpec::random(n, 0), static_cast<double>(n));
    const DatasetMatrices data = DatasetMatrices::from(label_dataset(build_d1(n), target, DatasetFamily::D1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(empirical_risk_gradient(c, data, LossKind::TRACE_SQ));
    }
    state.SetLabel(std::to_string(spec.num_parameters()) + " params");
}
BENCHMARK(BM_EmpiricalRiskGradient)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

} // namespace
