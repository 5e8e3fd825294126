// Copyright 2026 The dppens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dppens/elem_sym.hpp"
#include "dppens/kernel.hpp"
#include "dppens/oracle.hpp"
#include "dppens/random.hpp"
#include "dppens/spectrum.hpp"

namespace dppens {
namespace {

Eigen::MatrixXd random_points(Index n, Index d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd x(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) x(i, j) = rng.normal();
  }
  return x;
}

void BM_Gram(benchmark::State& state) {
  const Index n = state.range(0);
  const Eigen::MatrixXd x = random_points(n, 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gram(x, {KernelFamily::kGaussian, 3.0}));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Gram)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

void BM_Eigendecompose(benchmark::State& state) {
  const Index n = state.range(0);
  const GramMatrix k = gram(random_points(n, 8, 2), {KernelFamily::kGaussian, 3.0}).jittered(1e-8);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(k));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Eigendecompose)
    ->RangeMultiplier(2)
    ->Range(128, 1024)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNCubed);

void BM_ElemSymTable(benchmark::State& state) {
  const Index n = state.range(0);
  const Index k = state.range(1);
  Rng rng(3);
  std::vector<double> lam(static_cast<std::size_t>(n));
  for (auto& v : lam) v = std::pow(10.0, -6.0 + 12.0 * rng.uniform());
  for (auto _ : state) benchmark::DoNotOptimize(elem_sym(lam, k));
}
BENCHMARK(BM_ElemSymTable)->ArgsProduct({{500, 2000}, {50, 250}});

void BM_LeaveOneOut(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(4);
  std::vector<double> lam(static_cast<std::size_t>(n));
  for (auto& v : lam) v = std::pow(10.0, -6.0 + 12.0 * rng.uniform());
  const ElemSymTable table = elem_sym(lam, 50);
  Index l = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table.leave_one_out(l, 49));
    l = (l + 1) % n;
  }
}
BENCHMARK(BM_LeaveOneOut)->Arg(500)->Arg(2000);

void BM_ThmEnumeration(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(5);
  const GramMatrix k = random_spd(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(expect_dpp_exhaustive(k, 1.0));
}
BENCHMARK(BM_ThmEnumeration)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dppens
