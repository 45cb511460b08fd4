// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/commands.hpp>
#include <provchain/json_codec.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace provchain
{
namespace
{
constexpr std::array<std::string_view, 9> all_ops = {
    op::deploy_token, op::deploy_certificate, op::certify,        op::revoke,        op::add_batch,
    op::split_batch,  op::merge_batch,        op::transfer_batch, op::consume_batch,
};

using nlohmann::json;

const json& array_field(const json& params, const char* name)
{
    const auto& v = codec::field(params, name);
    if (!v.is_array())
        throw RequestError{std::string{"field '"} + name + "' must be an array"};
    return v;
}

std::vector<InputAssignment> decode_assignments(const json& params)
{
    std::vector<InputAssignment> out;
    if (!params.contains("inputs"))
        return out;
    for (const auto& a : array_field(params, "inputs"))
    {
        InputAssignment assignment;
        assignment.recipe_index = codec::u64(a, "recipe_index");
        for (const auto& d : array_field(a, "draws"))
            assignment.draws.push_back(codec::decode_draw(d));
        out.push_back(std::move(assignment));
    }
    return out;
}

std::vector<std::uint64_t> decode_u64_array(const json& params, const char* name)
{
    std::vector<std::uint64_t> out;
    for (const auto& v : array_field(params, name))
    {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            throw RequestError{std::string{"field '"} + name + "' must hold non-negative integers"};
        out.push_back(v.get<std::uint64_t>());
    }
    return out;
}

std::vector<BatchId> decode_ids(const json& params, const char* name)
{
    std::vector<BatchId> out;
    for (const auto& v : array_field(params, name))
    {
        if (!v.is_string())
            throw RequestError{std::string{"field '"} + name + "' must hold batch ids"};
        try
        {
            out.push_back(BatchId::from_hex(v.get<std::string>()));
        }
        catch (const std::invalid_argument& e)
        {
            throw RequestError{std::string{"field '"} + name + "': " + e.what()};
        }
    }
    return out;
}
}  // namespace

std::span<const std::string_view> operation_names() noexcept
{
    return all_ops;
}

bool is_operation(std::string_view name) noexcept
{
    for (auto n : all_ops)
        if (n == name)
            return true;
    return false;
}

nlohmann::json canonical_params(std::string_view op_name, const nlohmann::json& body)
{
    if (!body.is_object())
        throw RequestError{"request body must be a JSON object"};
    if (!is_operation(op_name))
        throw RequestError{"unknown operation '" + std::string{op_name} + "'"};

    enum class Kind
    {
        Address,
        Batch,
        Count,
        Text,
        Recipe,
        Inputs,
        Counts,
        Batches,
    };
    struct Field
    {
        const char* name;
        Kind kind;
        bool required;
    };
    static const std::map<std::string_view, std::vector<Field>> schema = {
        {op::deploy_token,
         {{"name", Kind::Text, true}, {"unit", Kind::Text, false}, {"recipe", Kind::Recipe, false}}},
        {op::deploy_certificate, {{"name", Kind::Text, true}}},
        {op::certify, {{"certificate", Kind::Address, true}, {"token", Kind::Address, true}}},
        {op::revoke, {{"certificate", Kind::Address, true}, {"token", Kind::Address, true}}},
        {op::add_batch,
         {{"contract", Kind::Address, true},
          {"amount", Kind::Count, true},
          {"inputs", Kind::Inputs, false}}},
        {op::split_batch,
         {{"contract", Kind::Address, true}, {"batch", Kind::Batch, true}, {"parts", Kind::Counts, true}}},
        {op::merge_batch, {{"contract", Kind::Address, true}, {"batches", Kind::Batches, true}}},
        {op::transfer_batch,
         {{"contract", Kind::Address, true}, {"batch", Kind::Batch, true}, {"to", Kind::Address, true}}},
        {op::consume_batch,
         {{"contract", Kind::Address, true}, {"batch", Kind::Batch, true}, {"amount", Kind::Count, true}}},
    };

    const auto& fields = schema.at(op_name);
    for (const auto& [key, _] : body.items())
    {
        if (key == "caller" || key == "timestamp")
            continue;
        if (std::none_of(fields.begin(), fields.end(), [&](const Field& f) { return key == f.name; }))
            throw RequestError{"unexpected field '" + key + "' for " + std::string{op_name}};
    }

    json out = json::object();
    for (const auto& f : fields)
    {
        if (!body.contains(f.name) && !f.required)
        {
            out[f.name] = f.kind == Kind::Text ? json("") : json::array();
            continue;
        }
        switch (f.kind)
        {
        case Kind::Address:
            out[f.name] = codec::address(body, f.name).hex();
            break;
        case Kind::Batch:
            out[f.name] = codec::batch_id(body, f.name).hex();
            break;
        case Kind::Count:
            out[f.name] = codec::u64(body, f.name);
            break;
        case Kind::Text:
            out[f.name] = codec::text(body, f.name);
            break;
        case Kind::Recipe: {
            json recipe = json::array();
            for (const auto& r : array_field(body, f.name))
                recipe.push_back(codec::encode(codec::decode_recipe_input(r)));
            out[f.name] = std::move(recipe);
            break;
        }
        case Kind::Inputs: {
            json inputs = json::array();
            for (const auto& a : decode_assignments(body))
            {
                json draws = json::array();
                for (const auto& d : a.draws)
                    draws.push_back(codec::encode(d));
                inputs.push_back({{"recipe_index", a.recipe_index}, {"draws", std::move(draws)}});
            }
            out[f.name] = std::move(inputs);
            break;
        }
        case Kind::Counts:
            out[f.name] = decode_u64_array(body, f.name);
            break;
        case Kind::Batches: {
            json ids = json::array();
            for (const auto& id : decode_ids(body, f.name))
                ids.push_back(id.hex());
            out[f.name] = std::move(ids);
            break;
        }
        }
    }
    return out;
}

TxResult execute(Ledger& ledger, const TxRequest& request)
{
    const TxContext tx{request.caller, request.timestamp};
    const auto& p = request.params;
    const auto& name = request.op;

    // Decode everything up front so that a malformed request never reaches the ledger.
    std::function<TxResult()> run;
    if (name == op::deploy_token)
    {
        std::vector<RecipeInput> recipe;
        if (p.contains("recipe"))
            for (const auto& r : array_field(p, "recipe"))
                recipe.push_back(codec::decode_recipe_input(r));
        auto n = codec::text(p, "name");
        auto unit = p.contains("unit") ? codec::text(p, "unit") : std::string{};
        run = [&ledger, tx, n = std::move(n), unit = std::move(unit), recipe = std::move(recipe)] {
            auto d = ledger.deploy_token_contract(tx, n, unit, recipe);
            return TxResult{{true, {d.address.hex()}, {}}, d.gas, {}};
        };
    }
    else if (name == op::deploy_certificate)
    {
        auto n = codec::text(p, "name");
        run = [&ledger, tx, n = std::move(n)] {
            auto d = ledger.deploy_certificate_contract(tx, n);
            return TxResult{{true, {d.address.hex()}, {}}, d.gas, {}};
        };
    }
    else if (name == op::certify || name == op::revoke)
    {
        const auto cert = codec::address(p, "certificate");
        const auto token = codec::address(p, "token");
        const bool grant = name == op::certify;
        run = [&ledger, tx, cert, token, grant] {
            grant ? ledger.certify(tx, cert, token) : ledger.revoke(tx, cert, token);
            return TxResult{{true, {}, {}}, {}, {}};
        };
    }
    else if (name == op::add_batch)
    {
        const auto token = codec::address(p, "contract");
        const auto amount = codec::u64(p, "amount");
        auto assignments = decode_assignments(p);
        run = [&ledger, tx, token, amount, assignments = std::move(assignments)] {
            auto c = ledger.add_batch(tx, token, amount, assignments);
            return TxResult{{true, {c.batch.hex()}, {}}, c.gas, {}};
        };
    }
    else if (name == op::split_batch)
    {
        const auto token = codec::address(p, "contract");
        const auto batch = codec::batch_id(p, "batch");
        auto parts = decode_u64_array(p, "parts");
        run = [&ledger, tx, token, batch, parts = std::move(parts)] {
            TxResult r{{true, {}, {}}, {}, {}};
            for (const auto& id : ledger.split_batch(tx, token, batch, parts))
                r.outcome.ids.push_back(id.hex());
            return r;
        };
    }
    else if (name == op::merge_batch)
    {
        const auto token = codec::address(p, "contract");
        auto ids = decode_ids(p, "batches");
        run = [&ledger, tx, token, ids = std::move(ids)] {
            return TxResult{{true, {ledger.merge_batch(tx, token, ids).hex()}, {}}, {}, {}};
        };
    }
    else if (name == op::transfer_batch)
    {
        const auto token = codec::address(p, "contract");
        const auto batch = codec::batch_id(p, "batch");
        const auto to = codec::address(p, "to");
        run = [&ledger, tx, token, batch, to] {
            ledger.transfer_batch(tx, token, batch, to);
            return TxResult{{true, {}, {}}, {}, {}};
        };
    }
    else if (name == op::consume_batch)
    {
        const auto token = codec::address(p, "contract");
        const auto batch = codec::batch_id(p, "batch");
        const auto amount = codec::u64(p, "amount");
        run = [&ledger, tx, token, batch, amount] {
            ledger.consume_batch(tx, token, batch, amount);
            return TxResult{{true, {}, {}}, {}, {}};
        };
    }
    else
    {
        throw RequestError{"unknown operation '" + name + "'"};
    }

    try
    {
        return run();
    }
    catch (const LedgerError& e)
    {
        return TxResult{{false, {}, e.code()}, {}, e.what()};
    }
}

}  // namespace provchain
