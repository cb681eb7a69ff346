// OpenMP kernels against their serial references. On a single core the two
// columns should match; the parallel form pays off with more threads.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <string>
#include <vector>

#include "boundary/distance.hpp"
#include "boundary/generators.hpp"
#include "boundary/mutation.hpp"
#include "boundary/oracles.hpp"
#include "boundary/rng.hpp"
#include "boundary/switchsearch.hpp"
#include "boundary/test_set.hpp"

using namespace boundary;

namespace {

std::vector<std::string> samples(const std::string& generator, std::size_t n, std::uint64_t seed) {
  const auto g = make_generator(generator);
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(*g, rng).text);
  return out;
}

void run_set_min(benchmark::State& state, const char* metric_name, bool parallel) {
  const auto from = samples("json", static_cast<std::size_t>(state.range(0)), 1);
  const auto to = samples("json", static_cast<std::size_t>(state.range(0)) * 4, 2);
  const auto metric = make_metric(metric_name);
  for (auto _ : state) {
    auto d = parallel ? set_min_distances(from, to, metric) : set_min_distances_serial(from, to, metric);
    benchmark::DoNotOptimize(d.data());
  }
  state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void BM_SetMinLevenshteinParallel(benchmark::State& s) { run_set_min(s, "levenshtein", true); }
void BM_SetMinLevenshteinSerial(benchmark::State& s) { run_set_min(s, "levenshtein", false); }
void BM_SetMinNcdParallel(benchmark::State& s) { run_set_min(s, "ncd", true); }
void BM_SetMinNcdSerial(benchmark::State& s) { run_set_min(s, "ncd", false); }

TestSet regex_tset(std::size_t n) {
  TestSet t(Role::tset);
  for (const auto& s : samples("regex", n, 3)) t.insert(Candidate{.text = s, .valid = true});
  return t;
}

void run_step2_bench(benchmark::State& state, bool parallel) {
  const auto tset = regex_tset(static_cast<std::size_t>(state.range(0)));
  const auto ops = MutatorSet::preset("chars");
  const auto oracle = make_oracle("regex");
  SwitchBudget budget;
  budget.target_switches = 10;
  budget.max_mutations_per_switch = 100;
  budget.max_total_mutations = 500;
  for (auto _ : state) {
    auto pairs = parallel ? run_step2(tset, ops, *oracle, budget, 11) : run_step2_serial(tset, ops, *oracle, budget, 11);
    benchmark::DoNotOptimize(pairs.data());
  }
  state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void BM_Step2Parallel(benchmark::State& s) { run_step2_bench(s, true); }
void BM_Step2Serial(benchmark::State& s) { run_step2_bench(s, false); }

}  // namespace

BENCHMARK(BM_SetMinLevenshteinParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetMinLevenshteinSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetMinNcdParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetMinNcdSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step2Parallel)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step2Serial)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
