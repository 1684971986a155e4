// Serial reference vs OpenMP kernels.
//
//   ./build/bench/bolkit_bench --benchmark_filter=Bol
//
// Arg 0 selects the serial path, arg 1 the parallel one.

#include <benchmark/benchmark.h>

#include "bolkit/bol_search.hpp"
#include "bolkit/mlt.hpp"
#include "bolkit/polar.hpp"

namespace {

bolkit::ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? bolkit::ExecPolicy::serial : bolkit::ExecPolicy::parallel;
}

bolkit::CayleyTable cyclic(std::size_t n) {
  std::vector<bolkit::Element> cells;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) cells.push_back(static_cast<bolkit::Element>((a + b) % n));
  return bolkit::validate_loop(n, std::move(cells));
}

void BM_BolTripleScan(benchmark::State& state) {
  const auto loop = cyclic(96);
  for (auto _ : state) benchmark::DoNotOptimize(bolkit::is_left_bol(loop, policy_of(state)).holds);
}
BENCHMARK(BM_BolTripleScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NormalSubloops(benchmark::State& state) {
  const auto loop = cyclic(16);
  for (auto _ : state)
    benchmark::DoNotOptimize(bolkit::normal_subloops(loop, 16, policy_of(state)).size());
}
BENCHMARK(BM_NormalSubloops)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SearchBol7(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bolkit::search_bol(7, policy_of(state)).size());
}
BENCHMARK(BM_SearchBol7)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IsSimpleA6(benchmark::State& state) {
  using bolkit::Permutation;
  const bolkit::PermutationGroup a6(6, {Permutation::from_cycles(6, {{0, 1, 2, 3, 4}}),
                                        Permutation::from_cycles(6, {{1, 2, 3, 4, 5}})});
  for (auto _ : state)
    benchmark::DoNotOptimize(bolkit::is_simple_group(a6, 1'000'000, policy_of(state)).simple);
}
BENCHMARK(BM_IsSimpleA6)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CheckIdentitiesReal3(benchmark::State& state) {
  bolkit::polar::SampleOptions options;
  options.policy = policy_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        bolkit::polar::check_identities(bolkit::polar::Field::real, 3, 200, 42, options).pass);
}
BENCHMARK(BM_CheckIdentitiesReal3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
