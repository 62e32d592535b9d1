#include <benchmark/benchmark.h>

#include "hgdyn/dynamic_update.hpp"
#include "hgdyn/hypergraph.hpp"
#include "hgdyn/triads.hpp"
#include "hgdyn/workload.hpp"

using namespace hgdyn;

namespace {

constexpr std::size_t kMaxCard = 8;

std::vector<EdgeSpec> instance(std::size_t n_edges) { return gen_random_edges(n_edges, 10 * n_edges, kMaxCard, 7); }

ChangeBatch batch_for(const DynHypergraph& g, std::size_t size, std::uint64_t seed) {
  BatchSpec spec;
  spec.n_changes = size;
  spec.card = CardDist{CardDist::Kind::uniform, kMaxCard};
  spec.n_vertices = 10 * g.num_edges();
  spec.next_id = static_cast<EdgeId>(g.internal_id_bound()) + static_cast<EdgeId>(1'000'000 * seed);
  spec.next_time = spec.next_id;
  spec.seed = seed;
  return gen_batch(g, spec);
}

CountOptions hyperedge_only() {
  CountOptions opt;
  opt.vertex = false;
  opt.temporal = false;
  return opt;
}

void BM_Build(benchmark::State& st) {
  const auto edges = instance(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(DynHypergraph::init(edges));
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations()) * st.range(0));
}
BENCHMARK(BM_Build)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_ApplyBatch(benchmark::State& st) {
  const DynHypergraph base = DynHypergraph::init(instance(100'000));
  const ChangeBatch batch = batch_for(base, static_cast<std::size_t>(st.range(0)), 1);
  for (auto _ : st) {
    st.PauseTiming();
    DynHypergraph g = base;
    st.ResumeTiming();
    g.apply(batch);
    benchmark::DoNotOptimize(g.num_edges());
  }
}
BENCHMARK(BM_ApplyBatch)->Arg(100)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_Recount(benchmark::State& st) {
  const DynHypergraph g = DynHypergraph::init(instance(static_cast<std::size_t>(st.range(0))));
  const CountState empty{{}, hyperedge_only()};
  for (auto _ : st) benchmark::DoNotOptimize(recount(empty, g));
}
BENCHMARK(BM_Recount)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_IncrementalUpdate(benchmark::State& st) {
  const DynHypergraph base = DynHypergraph::init(instance(100'000));
  const CountState start = recount(CountState{{}, hyperedge_only()}, base);
  const ChangeBatch batch = batch_for(base, static_cast<std::size_t>(st.range(0)), 1);
  for (auto _ : st) {
    st.PauseTiming();
    DynHypergraph g = base;
    CountState state = start;
    st.ResumeTiming();
    benchmark::DoNotOptimize(apply_and_update(state, g, batch));
  }
}
BENCHMARK(BM_IncrementalUpdate)->Arg(100)->Arg(1'000)->Unit(benchmark::kMillisecond);

void BM_TemporalCount(benchmark::State& st) {
  const DynHypergraph g = DynHypergraph::init(instance(20'000));
  const TemporalParams params{st.range(0) == 0 ? kUnboundedWindow : st.range(0)};
  for (auto _ : st) benchmark::DoNotOptimize(count_temporal_triads(g, params));
}
BENCHMARK(BM_TemporalCount)->Arg(0)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
