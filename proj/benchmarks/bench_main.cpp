#include <benchmark/benchmark.h>

#include <random>

#include "invlim/derived.hpp"
#include "invlim/int_matrix.hpp"
#include "invlim/set_system.hpp"

using namespace invlim;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long long> entry(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = entry(rng);
  }
  return m;
}

// Constant system {0..k-1} over an antichain of n elements: k^n threads.
SetSystem antichain_system(std::size_t n, std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::string> values;
  for (std::size_t x = 0; x < k; ++x) values.push_back(std::to_string(x));
  return SetSystem::build(Poset::from_indices(labels, {}), std::vector<std::vector<std::string>>(n, values), {});
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(7);
  auto m = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_LimitThreadsAntichain(benchmark::State& state) {
  auto s = antichain_system(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(limit_threads(s));
}
BENCHMARK(BM_LimitThreadsAntichain)->DenseRange(4, 14, 2);

static void BM_LimitThreadsTower(benchmark::State& state) {
  auto t = clipped_decrement_tower(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(limit_threads(t.system()));
}
BENCHMARK(BM_LimitThreadsTower)->Arg(16)->Arg(64)->Arg(256);

static void BM_DerivedLimitsGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto s = constant_system(grid_poset(n, n), FgAbGroup::free(1));
  for (auto _ : state) benchmark::DoNotOptimize(derived_limits(s));
}
BENCHMARK(BM_DerivedLimitsGrid)->Arg(2)->Arg(3);

static void BM_DerivedLimitsRandom(benchmark::State& state) {
  std::mt19937_64 rng(11);
  auto s = random_surjective_system(grid_poset(2, 3), rng);
  for (auto _ : state) benchmark::DoNotOptimize(derived_limits(s));
}
BENCHMARK(BM_DerivedLimitsRandom);
BENCHMARK_MAIN();
