// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/events.hpp>
#include <provchain/gas.hpp>
#include <provchain/ledger.hpp>
#include <provchain/provenance.hpp>

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace provchain
{
/// Malformed request parameters. Not a ledger rejection: such requests never become
/// transactions.
class RequestError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

namespace codec
{
using nlohmann::json;

/// Typed field access that reports the field name on failure (RequestError).
const json& field(const json& object, const char* name);
std::uint64_t u64(const json& object, const char* name);
std::string text(const json& object, const char* name);
Address address(const json& object, const char* name);
BatchId batch_id(const json& object, const char* name);

json encode(const gas::GasReceipt& receipt);
json encode(const gas::CostTable& costs);
/// Starts from `base` and overrides the keys present in `object`.
gas::CostTable decode_cost_table(const json& object, gas::CostTable base = {});

json encode(const RecipeInput& input);
RecipeInput decode_recipe_input(const json& object);

json encode(const ConsumedInput& draw);
ConsumedInput decode_draw(const json& object);

json encode(const LedgerEvent& event);

/// {contract, batchId, amount, children: [{drawn, node}]}
json encode(const ProvenanceNode& node);

}  // namespace codec
}  // namespace provchain
