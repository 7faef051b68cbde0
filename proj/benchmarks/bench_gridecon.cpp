#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "gridecon/cost_model.hpp"
#include "gridecon/placement.hpp"
#include "gridecon/quantities.hpp"
#include "gridecon/workload.hpp"

namespace {

using namespace gridecon;

// Deterministic left-deep plan: ops chained over one source per operator.
Plan make_plan(int operators, int sites, std::mt19937& rng) {
  std::uniform_real_distribution<double> sel(0.01, 1.5);
  std::uniform_real_distribution<double> density(0.0, 5e4);
  std::uniform_real_distribution<double> bytes(1e6, 1e11);
  std::uniform_int_distribution<int> site(0, sites - 1);

  PlanNode node{SourceNode{"s" + std::to_string(site(rng)),
                           ByteCount(bytes(rng))}};
  for (int i = 0; i < operators; ++i) {
    OperatorNode op;
    op.children.push_back(std::move(node));
    op.children.push_back(PlanNode{SourceNode{
        "s" + std::to_string(site(rng)), ByteCount(bytes(rng))}});
    op.instr_per_input_byte = density(rng);
    op.selectivity = sel(rng);
    node = PlanNode{std::move(op)};
  }
  return Plan{std::move(node), "s0"};
}

std::vector<Site> make_sites(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> price(0.0, 5e-13);
  std::vector<Site> sites;
  for (int i = 0; i < n; ++i) {
    sites.push_back({"s" + std::to_string(i), price(rng)});
  }
  return sites;
}

void BM_Optimize(benchmark::State& state) {
  const int operators = static_cast<int>(state.range(0));
  const int nsites = static_cast<int>(state.range(1));
  std::mt19937 rng(42);
  const std::vector<Site> sites = make_sites(nsites, rng);
  const Plan plan = make_plan(operators, nsites, rng);
  const LinkPrices links(1e-9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize(plan, sites, links));
  }
}
BENCHMARK(BM_Optimize)
    ->Args({2, 2})
    ->Args({4, 4})
    ->Args({8, 8})
    ->Args({16, 8})
    ->Args({16, 16});

void BM_Evaluate(benchmark::State& state) {
  const CostSchedule s = canonical_schedule();
  TaskProfile t;
  t.name = "bench";
  t.bytes_in = ByteCount(1e8);
  t.bytes_out = ByteCount(1e10);
  t.compute = CpuTime(61362.0);
  t.db_accesses = 1e6;
  t.storage_bytes = ByteCount(1e12);
  t.energy_wh = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(t, s));
  }
}
BENCHMARK(BM_Evaluate);

void BM_ParseQuantity(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_quantity("12.5GB", QuantityKind::Bytes));
    benchmark::DoNotOptimize(parse_quantity("7y", QuantityKind::CpuTime));
    benchmark::DoNotOptimize(parse_quantity("10µ$", QuantityKind::Money));
  }
}
BENCHMARK(BM_ParseQuantity);

void BM_FormatQuantity(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(format_quantity(1.5e13, QuantityKind::Instructions));
    benchmark::DoNotOptimize(format_quantity(1e-5, QuantityKind::Money));
  }
}
BENCHMARK(BM_FormatQuantity);

}  // namespace

BENCHMARK_MAIN();
