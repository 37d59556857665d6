// Serial reference vs the OpenMP kernel on 497a1 at p = 5.
#include <benchmark/benchmark.h>

#include <string>

#include "choired/census.hpp"
#include "choired/cli.hpp"
#include "choired/curve.hpp"

namespace {

const choired::CurveModel& curve_497a1() {
  static const choired::CurveModel curve = [] {
    for (const auto& rec : choired::load_curve_records(choired::default_curve_file()))
      if (rec.label == "497a1") return choired::validate_curve(rec);
    throw std::runtime_error("497a1 missing from the curve file");
  }();
  return curve;
}

void BM_reference(benchmark::State& state) {
  const auto& curve = curve_497a1();
  const auto setting = choired::make_prime_setting(curve, 5);
  choired::CensusOptions o;
  for (auto _ : state) {
    auto r = choired::run_census_reference(curve, setting, state.range(0), o);
    benchmark::DoNotOptimize(r.tally.total_fields);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_kernel(benchmark::State& state) {
  const auto& curve = curve_497a1();
  const auto setting = choired::make_prime_setting(curve, 5);
  choired::CensusOptions o;
  o.threads = static_cast<int>(state.range(1));
  o.chunk_size = 1 << 18;
  for (auto _ : state) {
    auto r = choired::run_census(curve, setting, state.range(0), o);
    benchmark::DoNotOptimize(r.tally.total_fields);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_reference)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel)
    ->ArgsProduct({{100'000, 1'000'000, 10'000'000}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
