// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/json_codec.hpp>

namespace provchain::codec
{
const json& field(const json& object, const char* name)
{
    if (!object.is_object())
        throw RequestError{"expected a JSON object"};
    const auto it = object.find(name);
    if (it == object.end())
        throw RequestError{std::string{"missing field '"} + name + "'"};
    return *it;
}

std::uint64_t u64(const json& object, const char* name)
{
    const auto& v = field(object, name);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw RequestError{std::string{"field '"} + name + "' must be a non-negative integer"};
    return v.get<std::uint64_t>();
}

std::string text(const json& object, const char* name)
{
    const auto& v = field(object, name);
    if (!v.is_string())
        throw RequestError{std::string{"field '"} + name + "' must be a string"};
    return v.get<std::string>();
}

Address address(const json& object, const char* name)
{
    try
    {
        return Address::from_hex(text(object, name));
    }
    catch (const std::invalid_argument& e)
    {
        throw RequestError{std::string{"field '"} + name + "': " + e.what()};
    }
}

BatchId batch_id(const json& object, const char* name)
{
    try
    {
        return BatchId::from_hex(text(object, name));
    }
    catch (const std::invalid_argument& e)
    {
        throw RequestError{std::string{"field '"} + name + "': " + e.what()};
    }
}

json encode(const gas::GasReceipt& receipt)
{
    return {{"total", receipt.total}, {"breakdown", receipt.breakdown}};
}

namespace
{
template <class F>
void for_each_cost(gas::CostTable& c, F&& f)
{
    f("txBase", c.tx_base);
    f("create", c.create);
    f("sstoreSet", c.sstore_set);
    f("sstoreUpdate", c.sstore_update);
    f("sload", c.sload);
    f("call", c.call);
    f("logBase", c.log_base);
    f("logTopic", c.log_topic);
    f("logDataPerByte", c.log_data_per_byte);
    f("deployBase", c.deploy_base);
    f("addBatchBase", c.add_batch_base);
    f("perInputEvent", c.per_input_event);
}
}  // namespace

json encode(const gas::CostTable& costs)
{
    json out = json::object();
    auto copy = costs;
    for_each_cost(copy, [&](const char* name, gas::Gas& g) { out[name] = g; });
    return out;
}

gas::CostTable decode_cost_table(const json& object, gas::CostTable base)
{
    if (!object.is_object())
        throw RequestError{"cost table must be a JSON object"};
    for (const auto& [key, _] : object.items())
    {
        bool known = false;
        for_each_cost(base, [&](const char* name, gas::Gas&) { known = known || key == name; });
        if (!known)
            throw RequestError{"unknown cost table key '" + key + "'"};
    }
    for_each_cost(base, [&](const char* name, gas::Gas& g) {
        if (object.contains(name))
            g = u64(object, name);
    });
    try
    {
        base.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw RequestError{e.what()};
    }
    return base;
}

json encode(const RecipeInput& input)
{
    return {{"kind", input.kind == RecipeInput::Source::SpecificToken ? "SpecificToken"
                                                                      : "CertifiedBy"},
            {"source", input.source.hex()},
            {"amount", input.amount_per_unit}};
}

RecipeInput decode_recipe_input(const json& object)
{
    const auto kind = text(object, "kind");
    RecipeInput input;
    if (kind == "SpecificToken")
        input.kind = RecipeInput::Source::SpecificToken;
    else if (kind == "CertifiedBy")
        input.kind = RecipeInput::Source::CertifiedBy;
    else
        throw RequestError{"recipe kind must be SpecificToken or CertifiedBy"};
    input.source = address(object, "source");
    input.amount_per_unit = u64(object, "amount");
    return input;
}

json encode(const ConsumedInput& draw)
{
    return {{"contract", draw.contract.hex()}, {"batch", draw.batch.hex()}, {"amount", draw.amount}};
}

ConsumedInput decode_draw(const json& object)
{
    return {address(object, "contract"), batch_id(object, "batch"), u64(object, "amount")};
}

namespace
{
json encode_parts(const std::vector<BatchPart>& parts)
{
    json out = json::array();
    for (const auto& p : parts)
        out.push_back({{"batch", p.batch.hex()}, {"amount", p.amount}});
    return out;
}

json encode_data(const EventPayload& payload)
{
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, event::ContractDeployed>)
            {
                json recipe = json::array();
                for (const auto& r : p.recipe)
                    recipe.push_back(encode(r));
                return {{"contract", p.contract.hex()},
                        {"owner", p.owner.hex()},
                        {"contractKind", p.kind == ContractKind::Token ? "Token" : "Certificate"},
                        {"name", p.name},
                        {"unit", p.unit_label},
                        {"recipe", recipe}};
            }
            else if constexpr (std::is_same_v<T, event::CertificateGranted> ||
                               std::is_same_v<T, event::CertificateRevoked>)
            {
                return {{"certificate", p.certificate.hex()}, {"token", p.token.hex()}};
            }
            else if constexpr (std::is_same_v<T, event::BatchCreated>)
            {
                json inputs = json::array();
                for (const auto& in : p.inputs)
                    inputs.push_back(encode(in));
                return {{"contract", p.contract.hex()},
                        {"batch", p.batch.hex()},
                        {"owner", p.owner.hex()},
                        {"amount", p.amount},
                        {"inputs", inputs}};
            }
            else if constexpr (std::is_same_v<T, event::BatchSplit>)
            {
                return {{"contract", p.contract.hex()},
                        {"parent", p.parent.hex()},
                        {"owner", p.owner.hex()},
                        {"children", encode_parts(p.children)}};
            }
            else if constexpr (std::is_same_v<T, event::BatchMerged>)
            {
                return {{"contract", p.contract.hex()},
                        {"batch", p.batch.hex()},
                        {"owner", p.owner.hex()},
                        {"parents", encode_parts(p.parents)}};
            }
            else if constexpr (std::is_same_v<T, event::BatchTransferred>)
            {
                return {{"contract", p.contract.hex()},
                        {"batch", p.batch.hex()},
                        {"from", p.from.hex()},
                        {"to", p.to.hex()}};
            }
            else
            {
                return {{"contract", p.contract.hex()},
                        {"batch", p.batch.hex()},
                        {"owner", p.owner.hex()},
                        {"amount", p.amount}};
            }
        },
        payload);
}
}  // namespace

json encode(const LedgerEvent& event)
{
    json topics = json::array();
    for (const auto& t : event.topics())
        topics.push_back(t.hex());
    return {{"index", event.index},
            {"timestamp", event.timestamp},
            {"caller", event.caller.hex()},
            {"kind", to_string(event.kind())},
            {"topics", topics},
            {"data", encode_data(event.payload)}};
}

json encode(const ProvenanceNode& node)
{
    json children = json::array();
    for (const auto& c : node.children)
        children.push_back({{"drawn", c.drawn}, {"node", encode(*c.node)}});
    return {{"contract", node.contract.hex()},
            {"batchId", node.batch.hex()},
            {"amount", node.amount_at_creation},
            {"children", children}};
}

}  // namespace provchain::codec
