// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/gas.hpp>

#include <numeric>

namespace provchain::gas
{
namespace
{
// Fresh slots written by a zero-input addBatch: packed id slot, amount, owner.
constexpr Gas batch_struct_slots = 3;
// BatchCreated carries the contract and batch slot as topics and the amount as data.
constexpr Gas created_event_topics = 2;
constexpr Gas created_event_data_bytes = 32;
// Per consumed input the event carries the packed source slot and the drawn amount.
constexpr Gas input_log_bytes = 64;

Gas zero_input_itemized(const CostTable& c) noexcept
{
    return c.tx_base + batch_struct_slots * c.sstore_set + c.log_base +
           created_event_topics * c.log_topic + created_event_data_bytes * c.log_data_per_byte;
}

Gas per_input_itemized(const CostTable& c) noexcept
{
    return c.sstore_update + input_log_bytes * c.log_data_per_byte + c.call;
}

Gas cert_check_cost(const CostTable& c) noexcept
{
    return c.call + c.sload;
}
}  // namespace

void CostTable::validate() const
{
    for (const Gas g : {tx_base, create, sstore_set, sstore_update, sload, call, log_base, log_topic,
                        log_data_per_byte, deploy_base, add_batch_base, per_input_event})
    {
        if (g == 0)
            throw std::invalid_argument{"cost table constants must be strictly positive"};
    }
    if (deploy_base < tx_base + create)
        throw std::invalid_argument{"deploy_base is smaller than tx_base + create"};
    if (add_batch_base < zero_input_itemized(*this))
        throw std::invalid_argument{"add_batch_base is smaller than its itemized parts"};
    if (per_input_event < per_input_itemized(*this) + cert_check_cost(*this))
        throw std::invalid_argument{"per_input_event is smaller than its itemized parts"};
}

std::string_view to_string(StorageStrategy s) noexcept
{
    return s == StorageStrategy::Uint256 ? "Uint256" : "Uint32Packed";
}

std::string_view to_string(BatchMode m) noexcept
{
    return m == BatchMode::StoreInputs ? "StoreInputs" : "EmitEvents";
}

std::optional<StorageStrategy> parse_strategy(std::string_view text) noexcept
{
    if (text == "Uint256")
        return StorageStrategy::Uint256;
    if (text == "Uint32Packed")
        return StorageStrategy::Uint32Packed;
    return std::nullopt;
}

std::optional<BatchMode> parse_mode(std::string_view text) noexcept
{
    if (text == "StoreInputs")
        return BatchMode::StoreInputs;
    if (text == "EmitEvents")
        return BatchMode::EmitEvents;
    return std::nullopt;
}

bool GasReceipt::consistent() const noexcept
{
    Gas sum = 0;
    for (const auto& [_, g] : breakdown)
        sum += g;
    return sum == total;
}

std::uint64_t recipe_slots(std::uint64_t inputs, StorageStrategy strategy) noexcept
{
    if (strategy == StorageStrategy::Uint256)
        return 2 * inputs;
    return inputs + (inputs + amounts_per_packed_slot - 1) / amounts_per_packed_slot;
}

GasReceipt deploy(const CostTable& costs, std::uint64_t inputs, StorageStrategy strategy)
{
    GasReceipt r;
    r.breakdown["base"] = costs.tx_base + costs.create;
    r.breakdown["storage"] = recipe_slots(inputs, strategy) * costs.sstore_set;
    r.breakdown["logs"] = 0;
    r.breakdown["calls"] = 0;
    r.breakdown["calibratedOverhead"] = costs.deploy_base - costs.tx_base - costs.create;
    r.total = costs.deploy_base + r.breakdown["storage"];
    return r;
}

GasReceipt add_batch(const CostTable& costs, std::uint64_t inputs, BatchMode mode,
                     std::uint64_t cert_checks)
{
    if (cert_checks > inputs)
        throw std::invalid_argument{"cert_checks exceeds the number of inputs"};

    const Gas base_overhead = costs.add_batch_base - zero_input_itemized(costs);
    const Gas input_overhead = costs.per_input_event - per_input_itemized(costs);

    GasReceipt r;
    r.breakdown["base"] = costs.tx_base;
    r.breakdown["storage"] =
        batch_struct_slots * costs.sstore_set + inputs * costs.sstore_update +
        (mode == BatchMode::StoreInputs ? inputs * costs.sstore_set : 0);
    r.breakdown["logs"] = costs.log_base + created_event_topics * costs.log_topic +
                          (created_event_data_bytes + inputs * input_log_bytes) *
                              costs.log_data_per_byte;
    // Certificate lookups are part of the measured per-input cost; itemizing them moves gas
    // out of the calibrated remainder without changing the total.
    r.breakdown["calls"] = inputs * costs.call + cert_checks * cert_check_cost(costs);
    r.breakdown["calibratedOverhead"] =
        base_overhead + inputs * input_overhead - cert_checks * cert_check_cost(costs);

    r.total = costs.add_batch_base + inputs * (mode == BatchMode::StoreInputs
                                                   ? costs.per_input_store()
                                                   : costs.per_input_event);
    return r;
}

Gas sourcing_tree(const CostTable& costs, std::uint64_t nodes, std::uint64_t edges)
{
    const std::uint64_t max_edges = nodes == 0 ? 0 : nodes * (nodes - 1);
    if (edges > max_edges)
        throw std::invalid_argument{"edge count exceeds nodes * (nodes - 1)"};
    return nodes * costs.add_batch_base + edges * costs.per_input_event;
}

std::string deploy_curve_csv(const CostTable& costs, std::uint64_t max_inputs)
{
    std::string out = "nInputs,mode_or_strategy,gas\n";
    for (const auto s : {StorageStrategy::Uint256, StorageStrategy::Uint32Packed})
        for (std::uint64_t n = 0; n <= max_inputs; ++n)
            out += std::to_string(n) + "," + std::string{to_string(s)} + "," +
                   std::to_string(deploy(costs, n, s).total) + "\n";
    return out;
}

std::string add_batch_curve_csv(const CostTable& costs, std::uint64_t max_inputs)
{
    std::string out = "nInputs,mode_or_strategy,gas\n";
    for (const auto m : {BatchMode::EmitEvents, BatchMode::StoreInputs})
        for (std::uint64_t n = 0; n <= max_inputs; ++n)
            out += std::to_string(n) + "," + std::string{to_string(m)} + "," +
                   std::to_string(add_batch(costs, n, m).total) + "\n";
    return out;
}

}  // namespace provchain::gas
