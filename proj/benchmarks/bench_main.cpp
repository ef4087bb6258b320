#include <benchmark/benchmark.h>

#include "poa_arena/catalog.hpp"
#include "poa_arena/chain_store.hpp"
#include "poa_arena/event_queue.hpp"
#include "poa_arena/pos.hpp"
#include "poa_arena/scenario.hpp"

using namespace poa_arena;

static void BM_ChainStoreExtend(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    std::vector<Block> blocks;
    Block parent = genesis_block();
    for (std::uint64_t i = 1; i <= n; ++i) {
        BlockHeader h{parent.digest, i, i, static_cast<std::uint32_t>(i % 7), 1 + static_cast<std::uint32_t>(i % 2), 100};
        parent = Block::make(h);
        blocks.push_back(parent);
    }
    for (auto _ : state) {
        ChainStore s;
        for (const auto& b : blocks) s.extend(b);
        benchmark::DoNotOptimize(s.fork_choice());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ChainStoreExtend)->Arg(1000)->Arg(10000);

static void BM_EventQueue(benchmark::State& state) {
    for (auto _ : state) {
        EventQueue q;
        for (std::uint64_t i = 0; i < 10000; ++i) q.schedule((i * 7919) % 10007, NodeId{0}, SlotTick{i});
        while (!q.empty()) benchmark::DoNotOptimize(q.pop());
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_EventQueue);

static void BM_LeaderLottery(benchmark::State& state) {
    std::vector<StakeEntry> entries;
    for (std::uint32_t i = 0; i < 10; ++i) entries.push_back({NodeId{i}, 1.0 + i});
    const StakeTable t(std::move(entries));
    std::uint64_t slot = 0;
    for (auto _ : state) benchmark::DoNotOptimize(pos_select_leader(1, ++slot, t));
}
BENCHMARK(BM_LeaderLottery);

static void BM_Preset(benchmark::State& state) {
    const auto presets = attack_catalog();
    const auto& p = presets.at(static_cast<std::size_t>(state.range(0)));
    state.SetLabel(p.name);
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(p.config));
}
BENCHMARK(BM_Preset)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_TenNodeProtocol(benchmark::State& state) {
    ScenarioConfig c;
    c.protocol = static_cast<Protocol>(state.range(0));
    c.node_count = 10;
    c.slot_duration = 5000;
    c.duration = 1000 * c.slot_duration;
    c.link = LinkModel{200, 50, 0.0};
    c = normalize(c);
    state.SetLabel(std::string(to_string(c.protocol)));
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(c));
}
BENCHMARK(BM_TenNodeProtocol)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
