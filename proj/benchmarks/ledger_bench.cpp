// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/keccak.hpp>
#include <provchain/ledger.hpp>
#include <provchain/provenance.hpp>
#include <provchain/store.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace provchain;

namespace
{
Address address(std::uint8_t fill)
{
    std::array<std::uint8_t, 20> bytes;
    bytes.fill(fill);
    return Address{bytes};
}

/// `width` resource batches feed one product; above it, `depth - 1` tiers each consume the
/// single batch below.
struct Chain
{
    Ledger ledger;
    Address top;
    BatchId top_batch;
    Address bottom;
    BatchId bottom_batch;
};

Chain build_chain(int depth, int width)
{
    Chain c;
    const auto maker = address(0x11);
    std::uint64_t t = 0;
    c.bottom = c.ledger.deploy_token_contract({maker, ++t}, "tier0", "u", {}).address;
    InputAssignment fan{0, {}};
    for (int i = 0; i < width; ++i)
    {
        const auto id = c.ledger.add_batch({maker, ++t}, c.bottom, 1'000, {}).batch;
        fan.draws.push_back({c.bottom, id, 1});
    }
    c.bottom_batch = fan.draws.front().batch;

    auto below = c.bottom;
    auto assignment = fan;
    auto per_unit = static_cast<std::uint64_t>(width);
    for (int d = 1; d < depth; ++d)
    {
        const auto tier = c.ledger
                              .deploy_token_contract({maker, ++t}, "tier" + std::to_string(d), "u",
                                                     {RecipeInput::token(below, per_unit)})
                              .address;
        const auto made = c.ledger.add_batch({maker, ++t}, tier, 1, {assignment}).batch;
        below = tier;
        assignment = {0, {{tier, made, 1}}};
        per_unit = 1;
        c.top = tier;
        c.top_batch = made;
    }
    return c;
}
}  // namespace

static void BM_keccak256(benchmark::State& state)
{
    std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)), 0xAB);
    for (auto _ : state)
        benchmark::DoNotOptimize(keccak256(data));
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_keccak256)->RangeMultiplier(8)->Range(32, 32 << 10);

static void BM_derive_batch_id(benchmark::State& state)
{
    std::mt19937_64 rng{1};
    std::vector<ConsumedInput> inputs(static_cast<std::size_t>(state.range(0)));
    for (auto& in : inputs)
    {
        for (auto& b : in.contract.bytes())
            b = static_cast<std::uint8_t>(rng());
        in.amount = rng();
    }
    const auto sender = address(0x22);
    std::uint64_t ts = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(derive_batch_id(inputs, sender, ++ts));
}
BENCHMARK(BM_derive_batch_id)->Arg(0)->Arg(1)->Arg(8)->Arg(32);

static void BM_add_resource_batch(benchmark::State& state)
{
    Ledger ledger;
    const auto maker = address(0x33);
    std::uint64_t t = 0;
    const auto token = ledger.deploy_token_contract({maker, ++t}, "r", "u", {}).address;
    for (auto _ : state)
        benchmark::DoNotOptimize(ledger.add_batch({maker, ++t}, token, 10, {}));
    state.counters["batches"] = static_cast<double>(ledger.find_token(token)->batches.size());
}
BENCHMARK(BM_add_resource_batch);

static void BM_add_product_batch(benchmark::State& state)
{
    const auto inputs = static_cast<std::uint64_t>(state.range(0));
    Ledger ledger;
    const auto maker = address(0x44);
    std::uint64_t t = 0;
    const auto resource = ledger.deploy_token_contract({maker, ++t}, "r", "u", {}).address;
    const auto product =
        ledger.deploy_token_contract({maker, ++t}, "p", "u", {RecipeInput::token(resource, inputs)}).address;
    std::vector<BatchId> pool;
    for (std::uint64_t i = 0; i < inputs; ++i)
        pool.push_back(ledger.add_batch({maker, ++t}, resource, 1'000'000'000, {}).batch);
    InputAssignment a{0, {}};
    for (const auto& id : pool)
        a.draws.push_back({resource, id, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(ledger.add_batch({maker, ++t}, product, 1, {a}));
}
BENCHMARK(BM_add_product_batch)->Arg(1)->Arg(4)->Arg(16);

static void BM_trace_provenance(benchmark::State& state)
{
    const auto chain = build_chain(static_cast<int>(state.range(0)), 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(trace_provenance(chain.ledger.events(), chain.top, chain.top_batch));
}
BENCHMARK(BM_trace_provenance)->Arg(3)->Arg(10)->Arg(50);

static void BM_track_descendants(benchmark::State& state)
{
    const auto chain = build_chain(static_cast<int>(state.range(0)), 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(track_descendants(chain.ledger.events(), chain.bottom, chain.bottom_batch));
}
BENCHMARK(BM_track_descendants)->Arg(3)->Arg(10)->Arg(50);

static void BM_state_digest(benchmark::State& state)
{
    Ledger ledger;
    const auto maker = address(0x55);
    std::uint64_t t = 0;
    const auto token = ledger.deploy_token_contract({maker, ++t}, "r", "u", {}).address;
    for (int i = 0; i < state.range(0); ++i)
        ledger.add_batch({maker, ++t}, token, 5, {});
    for (auto _ : state)
        benchmark::DoNotOptimize(state_digest(ledger));
    state.counters["batches"] = static_cast<double>(state.range(0));
}
BENCHMARK(BM_state_digest)->RangeMultiplier(10)->Range(10, 10'000);

static void BM_replay(benchmark::State& state)
{
    Ledger live;
    const auto maker = address(0x66);
    const auto token = live.deploy_token_contract({maker, 1}, "r", "u", {}).address;
    std::vector<TransactionRecord> records;
    records.push_back({0, 1, maker, "deploy_token_contract", {{"name", "r"}, {"unit", "u"}, {"recipe", nlohmann::json::array()}},
                       {true, {token.hex()}, {}}, state_digest(live)});
    for (std::uint64_t i = 1; i < static_cast<std::uint64_t>(state.range(0)); ++i)
    {
        const auto id = live.add_batch({maker, 1 + i}, token, 5, {}).batch;
        records.push_back({i, 1 + i, maker, "add_batch",
                           {{"contract", token.hex()}, {"amount", 5}, {"inputs", nlohmann::json::array()}},
                           {true, {id.hex()}, {}}, state_digest(live)});
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(replay(records).digest);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_replay)->Arg(100)->Arg(1'000);

BENCHMARK_MAIN();
