// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/gateway.hpp>
#include <provchain/json_codec.hpp>
#include <provchain/provenance.hpp>

#include <chrono>
#include <fstream>

namespace provchain
{
namespace
{
using nlohmann::json;

std::uint64_t query_u64(const std::map<std::string, std::string>& q, const std::string& key,
                        std::optional<std::uint64_t> fallback = std::nullopt)
{
    const auto it = q.find(key);
    if (it == q.end())
    {
        if (fallback)
            return *fallback;
        throw ApiError{400, "BadRequest", "missing query parameter '" + key + "'"};
    }
    std::size_t used = 0;
    try
    {
        if (!it->second.empty() && it->second[0] != '-')
        {
            const auto v = std::stoull(it->second, &used);
            if (used == it->second.size())
                return v;
        }
    }
    catch (const std::exception&)
    {
    }
    throw ApiError{400, "BadRequest", "query parameter '" + key + "' must be a non-negative integer"};
}

template <class F>
auto ledger_query(F&& f)
{
    try
    {
        return f();
    }
    catch (const LedgerError& e)
    {
        throw ApiError{http_status(e.code()), std::string{to_string(e.code())}, e.what()};
    }
}
}  // namespace

int http_status(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::UnknownContract:
    case ErrorCode::UnknownBatch:
    case ErrorCode::UnknownSource:
        return 404;
    case ErrorCode::NotOwner:
    case ErrorCode::NotBatchOwner:
    case ErrorCode::NotCertifier:
        return 403;
    case ErrorCode::BadAmount:
    case ErrorCode::ArityMismatch:
    case ErrorCode::QuantityMismatch:
    case ErrorCode::InputMismatch:
    case ErrorCode::BadPartition:
    case ErrorCode::BadMerge:
        return 422;
    default:
        return 409;
    }
}

Service::Service(ServiceConfig config) : config_{std::move(config)}, ledger_{config_.gas}
{
    if (config_.log_path)
    {
        auto loaded = load_log(*config_.log_path);
        auto replayed = replay(loaded.records, config_.gas);
        ledger_ = std::move(replayed.ledger);
        next_index_ = loaded.records.size();
        log_.emplace(*config_.log_path);
    }
}

void Service::set_persist_hook(std::function<void(const TransactionRecord&)> hook)
{
    std::unique_lock lock{mutex_};
    persist_hook_ = std::move(hook);
}

std::uint64_t Service::next_timestamp(const json& body) const
{
    if (body.contains("timestamp"))
    {
        try
        {
            return codec::u64(body, "timestamp");
        }
        catch (const RequestError& e)
        {
            throw ApiError{400, "BadRequest", e.what()};
        }
    }
    const auto now = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    return std::max(now, ledger_.last_timestamp());
}

json Service::submit(std::string_view op, const json& body)
{
    TxRequest request;
    try
    {
        if (!is_operation(op))
            throw RequestError{"unknown operation '" + std::string{op} + "'"};
        request.op = std::string{op};
        request.caller = codec::address(body, "caller");
        request.params = canonical_params(op, body);
    }
    catch (const RequestError& e)
    {
        throw ApiError{400, "BadRequest", e.what()};
    }

    std::unique_lock lock{mutex_};
    request.timestamp = next_timestamp(body);

    TxResult result;
    try
    {
        result = execute(ledger_, request);
    }
    catch (const RequestError& e)
    {
        throw ApiError{400, "BadRequest", e.what()};
    }

    TransactionRecord record{next_index_,    request.timestamp, request.caller, request.op,
                             request.params, result.outcome,    state_digest(ledger_)};
    if (log_)
    {
        try
        {
            log_->persist(record);
        }
        catch (const StorageError&)
        {
            // Not durable, so not applied: fall back to what the log holds.
            ledger_ = replay(load_log(log_->path()).records, config_.gas).ledger;
            throw;
        }
    }
    ++next_index_;
    if (persist_hook_)
        persist_hook_(record);

    if (result.outcome.accepted)
    {
        json out = {{"status", "accepted"}, {"index", record.index}, {"ids", result.outcome.ids}};
        if (result.gas)
            out["gas"] = codec::encode(*result.gas);
        return out;
    }
    return {{"status", "rejected"},
            {"index", record.index},
            {"code", to_string(*result.outcome.error)},
            {"message", result.message}};
}

json Service::balances(const Address& owner) const
{
    std::shared_lock lock{mutex_};
    json out = json::array();
    for (const auto& [address, token] : ledger_.tokens())
    {
        json batches = json::array();
        std::uint64_t total = 0;
        for (const auto& [id, b] : token.batches)
        {
            if (b.owner != owner || b.depleted())
                continue;
            total += b.amount;
            batches.push_back({{"batch", id.hex()}, {"amount", b.amount}});
        }
        out.push_back({{"contract", address.hex()},
                       {"name", token.name},
                       {"unit", token.unit_label},
                       {"balance", total},
                       {"batches", batches}});
    }
    return {{"owner", owner.hex()}, {"balances", out}};
}

json Service::provenance(const Address& contract, const BatchId& batch) const
{
    std::shared_lock lock{mutex_};
    return ledger_query([&] { return codec::encode(*trace_provenance(ledger_.events(), contract, batch)); });
}

json Service::track(const Address& contract, const BatchId& batch) const
{
    std::shared_lock lock{mutex_};
    return ledger_query([&] {
        json out = json::array();
        for (const auto& ref : track_descendants(ledger_.events(), contract, batch))
            out.push_back({{"contract", ref.contract.hex()}, {"batch", ref.batch.hex()}});
        return out;
    });
}

json Service::custody(const Address& contract, const BatchId& batch) const
{
    std::shared_lock lock{mutex_};
    return ledger_query([&] {
        json out = json::array();
        for (const auto& e : custody_history(ledger_.events(), contract, batch))
            out.push_back(codec::encode(e));
        return out;
    });
}

json Service::events(const EventFilter& filter) const
{
    std::shared_lock lock{mutex_};
    json out = json::array();
    for (const auto& e : ledger_.events().query(filter))
        out.push_back(codec::encode(e));
    return out;
}

json Service::contracts() const
{
    std::shared_lock lock{mutex_};
    json out = json::array();
    for (const auto& [address, t] : ledger_.tokens())
    {
        json recipe = json::array();
        for (const auto& r : t.recipe)
            recipe.push_back(codec::encode(r));
        out.push_back({{"address", address.hex()},
                       {"kind", "Token"},
                       {"owner", t.owner.hex()},
                       {"name", t.name},
                       {"unit", t.unit_label},
                       {"recipe", recipe}});
    }
    for (const auto& [address, c] : ledger_.certificates())
    {
        json certified = json::array();
        for (const auto& [token, status] : c.current)
            if (status == CertStatus::Active)
                certified.push_back(token.hex());
        out.push_back({{"address", address.hex()},
                       {"kind", "Certificate"},
                       {"owner", c.certifier.hex()},
                       {"name", c.name},
                       {"certified", certified}});
    }
    return out;
}

json Service::participants() const
{
    std::shared_lock lock{mutex_};
    json out = json::array();
    for (const auto& p : ledger_.participants())
        out.push_back(p.hex());
    return out;
}

json Service::gas_estimate(const std::map<std::string, std::string>& query) const
{
    const auto& costs = config_.gas.costs;
    const auto it = query.find("op");
    const std::string op = it == query.end() ? "" : it->second;
    if (op == "deploy")
    {
        const auto s = query.contains("strategy") ? gas::parse_strategy(query.at("strategy"))
                                                  : std::optional{config_.gas.strategy};
        if (!s)
            throw ApiError{400, "BadRequest", "strategy must be Uint256 or Uint32Packed"};
        return codec::encode(gas::deploy(costs, query_u64(query, "inputs", 0), *s));
    }
    if (op == "add_batch")
    {
        const auto m = query.contains("mode") ? gas::parse_mode(query.at("mode"))
                                              : std::optional{config_.gas.mode};
        if (!m)
            throw ApiError{400, "BadRequest", "mode must be StoreInputs or EmitEvents"};
        try
        {
            return codec::encode(gas::add_batch(costs, query_u64(query, "inputs", 0), *m,
                                               query_u64(query, "cert_checks", 0)));
        }
        catch (const std::invalid_argument& e)
        {
            throw ApiError{400, "BadRequest", e.what()};
        }
    }
    if (op == "sourcing_tree")
    {
        try
        {
            return {{"total", gas::sourcing_tree(costs, query_u64(query, "nodes"),
                                                 query_u64(query, "edges"))}};
        }
        catch (const std::invalid_argument& e)
        {
            throw ApiError{400, "BadRequest", e.what()};
        }
    }
    throw ApiError{400, "BadRequest", "op must be deploy, add_batch or sourcing_tree"};
}

std::string Service::digest_hex() const
{
    std::shared_lock lock{mutex_};
    return to_hex(state_digest(ledger_));
}

std::vector<std::filesystem::path> export_gas_figures(const std::filesystem::path& directory,
                                                      const gas::CostTable& costs)
{
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec)
        throw StorageError{"cannot create " + directory.string() + ": " + ec.message()};

    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] :
         {std::pair{"deploy_gas.csv", gas::deploy_curve_csv(costs)},
          std::pair{"add_batch_gas.csv", gas::add_batch_curve_csv(costs)}})
    {
        const auto path = directory / name;
        std::ofstream out{path, std::ios::trunc};
        out << content;
        out.flush();
        if (!out)
            throw StorageError{"cannot write " + path.string()};
        written.push_back(path);
    }
    return written;
}

gas::CostTable load_cost_table(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw std::runtime_error{"cannot read cost table " + path.string()};
    try
    {
        return codec::decode_cost_table(nlohmann::json::parse(in));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw std::runtime_error{"cost table " + path.string() + ": " + e.what()};
    }
}

}  // namespace provchain
