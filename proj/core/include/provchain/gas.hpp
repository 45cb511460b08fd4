// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace provchain::gas
{
using Gas = std::uint64_t;

/// Gas constants. Opcode prices follow the pre-Istanbul yellow-paper schedule; the two
/// add-batch constants are pinned to measurements of the reference Solidity contracts.
struct CostTable
{
    Gas tx_base = 21000;
    Gas create = 32000;
    Gas sstore_set = 20000;
    Gas sstore_update = 5000;
    Gas sload = 200;
    Gas call = 700;
    Gas log_base = 375;
    Gas log_topic = 375;
    Gas log_data_per_byte = 8;
    /// Constructor execution plus code deposit of a token contract with an empty recipe.
    Gas deploy_base = 1'250'000;
    Gas add_batch_base = 92'756;
    Gas per_input_event = 19'241;

    /// One extra fresh slot per stored input.
    Gas per_input_store() const noexcept { return per_input_event + sstore_set; }

    /// Throws std::invalid_argument if a constant is zero or the itemized parts exceed the
    /// calibrated totals they are carved out of.
    void validate() const;

    friend bool operator==(const CostTable&, const CostTable&) = default;
};

enum class StorageStrategy
{
    Uint256,
    Uint32Packed,
};

enum class BatchMode
{
    StoreInputs,
    EmitEvents,
};

std::string_view to_string(StorageStrategy s) noexcept;
std::string_view to_string(BatchMode m) noexcept;
std::optional<StorageStrategy> parse_strategy(std::string_view text) noexcept;
std::optional<BatchMode> parse_mode(std::string_view text) noexcept;

/// Itemized cost. Categories: base, storage, logs, calls, calibratedOverhead.
struct GasReceipt
{
    Gas total = 0;
    std::map<std::string, Gas> breakdown;

    /// total == sum of breakdown entries
    bool consistent() const noexcept;
};

/// Amounts packed into a uint32 slot.
inline constexpr std::uint64_t amounts_per_packed_slot = 8;

/// Storage slots of a recipe with n inputs. Each input keeps one packed address||id slot;
/// amounts take a full word each (Uint256) or share a word eight at a time (Uint32Packed).
std::uint64_t recipe_slots(std::uint64_t inputs, StorageStrategy strategy) noexcept;

GasReceipt deploy(const CostTable& costs, std::uint64_t inputs, StorageStrategy strategy);

/// Throws std::invalid_argument when cert_checks > inputs.
GasReceipt add_batch(const CostTable& costs, std::uint64_t inputs, BatchMode mode,
                     std::uint64_t cert_checks = 0);

/// Total creation gas of a sourcing tree in event mode. Depends only on the vertex and edge
/// counts. Throws std::invalid_argument when edges > nodes * (nodes - 1).
Gas sourcing_tree(const CostTable& costs, std::uint64_t nodes, std::uint64_t edges);

/// Cost curves as CSV with header "nInputs,mode_or_strategy,gas", inputs 0..max_inputs.
std::string deploy_curve_csv(const CostTable& costs, std::uint64_t max_inputs = 32);
std::string add_batch_curve_csv(const CostTable& costs, std::uint64_t max_inputs = 32);

}  // namespace provchain::gas
