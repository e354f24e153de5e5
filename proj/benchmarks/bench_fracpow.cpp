#include <benchmark/benchmark.h>

#include <filesystem>

#include "fracpow/format.hpp"
#include "fracpow/generator.hpp"
#include "fracpow/miner.hpp"
#include "fracpow/symbolic.hpp"
#include "fracpow/verifier.hpp"

using namespace fracpow;

namespace {

  std::filesystem::path const kCatalog(FRACPOW_BENCH_CATALOG);

  void BM_Generate(benchmark::State& state) {
    Fraction const f(static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(1)));
    std::size_t const n = static_cast<std::size_t>(state.range(2));
    for (auto _ : state) {
      benchmark::DoNotOptimize(generate_lexleast(f, n));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  }
  BENCHMARK(BM_Generate)->Args({5, 3, 100000})->Args({7, 5, 100000})->Args({6, 5, 100000})->Args({2, 1, 100000});

  void BM_Expand(benchmark::State& state) {
    auto m = parse_morphism(read_text(kCatalog / "thm_8_5.json")).morphism;
    std::size_t const n = 1'000'000;
    for (auto _ : state) {
      benchmark::DoNotOptimize(expand_fixed_point(m, n));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  }
  BENCHMARK(BM_Expand);

  void BM_LocatingExplicit(benchmark::State& state) {
    auto m = parse_morphism(read_text(kCatalog / "thm_31_22.json")).morphism;
    for (auto _ : state) {
      benchmark::DoNotOptimize(locating_length_explicit(m));
    }
  }
  BENCHMARK(BM_LocatingExplicit)->Unit(benchmark::kMillisecond);

  void BM_WindowScan(benchmark::State& state) {
    auto m = parse_morphism(read_text(kCatalog / "thm_8_5.json")).morphism;
    auto const mult = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(window_scan(m, Fraction(8, 5), mult));
    }
  }
  BENCHMARK(BM_WindowScan)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

  void BM_DetectK(benchmark::State& state) {
    Word w = generate_lexleast(Fraction(8, 5), 60000);
    for (auto _ : state) {
      benchmark::DoNotOptimize(detect_k(w));
    }
  }
  BENCHMARK(BM_DetectK)->Unit(benchmark::kMillisecond);

  void BM_SymbolicProve(benchmark::State& state) {
    auto m = parse_symbolic(read_text(kCatalog / "thm_4_5a_4b.json"));
    for (auto _ : state) {
      benchmark::DoNotOptimize(sym_verify_free(m));
    }
  }
  BENCHMARK(BM_SymbolicProve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
