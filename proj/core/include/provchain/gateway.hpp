// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/commands.hpp>
#include <provchain/ledger.hpp>
#include <provchain/store.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace provchain
{
struct ServiceConfig
{
    /// Without a log path the service is memory-only.
    std::optional<std::filesystem::path> log_path;
    GasProfile gas;
};

/// Error surfaced to API clients as {code, message} with an HTTP-like status.
struct ApiError
{
    int status = 400;
    std::string code;
    std::string message;

    nlohmann::json body() const { return {{"code", code}, {"message", message}}; }
};

/// HTTP status for a ledger rejection.
int http_status(ErrorCode code) noexcept;

/// The operational surface shared by the HTTP server and the CLI.
///
/// Writes go through a single serialized transaction loop: execute, persist the record,
/// then acknowledge. Reads run concurrently against the state between transactions.
class Service
{
public:
    /// Restores state by replaying the log. Throws ReplayError or StorageError.
    explicit Service(ServiceConfig config);

    /// Submits one transaction. `body` carries `caller`, an optional `timestamp` (defaults to
    /// the wall clock, clamped to be non-decreasing) and the operation's parameters.
    /// Returns {"status":"accepted","index","ids","gas"?} or
    /// {"status":"rejected","index","code","message"}. Throws ApiError for malformed requests
    /// and StorageError (state rolled back) when the record cannot be persisted.
    nlohmann::json submit(std::string_view op, const nlohmann::json& body);

    nlohmann::json balances(const Address& owner) const;
    nlohmann::json provenance(const Address& contract, const BatchId& batch) const;
    nlohmann::json track(const Address& contract, const BatchId& batch) const;
    nlohmann::json custody(const Address& contract, const BatchId& batch) const;
    nlohmann::json events(const EventFilter& filter) const;
    nlohmann::json contracts() const;
    nlohmann::json participants() const;
    /// Query keys: op=deploy|add_batch|sourcing_tree, inputs, strategy, mode, cert_checks,
    /// nodes, edges.
    nlohmann::json gas_estimate(const std::map<std::string, std::string>& query) const;
    std::string digest_hex() const;

    /// Runs `f(const Ledger&)` under the read lock.
    template <class F>
    auto read(F&& f) const
    {
        std::shared_lock lock{mutex_};
        return f(ledger_);
    }

    /// Called after a record is durable and before the caller is acknowledged.
    void set_persist_hook(std::function<void(const TransactionRecord&)> hook);

    const GasProfile& gas_profile() const noexcept { return config_.gas; }

private:
    std::uint64_t next_timestamp(const nlohmann::json& body) const;

    ServiceConfig config_;
    mutable std::shared_mutex mutex_;
    Ledger ledger_;
    std::optional<TxLog> log_;
    std::uint64_t next_index_ = 0;
    std::function<void(const TransactionRecord&)> persist_hook_;
};

/// Writes deploy_gas.csv and add_batch_gas.csv (0..32 inputs) into `directory` and returns
/// their paths. Throws StorageError on write failure.
std::vector<std::filesystem::path> export_gas_figures(const std::filesystem::path& directory,
                                                      const gas::CostTable& costs);

/// Parses a cost-table override file (JSON object of constant names to gas).
gas::CostTable load_cost_table(const std::filesystem::path& path);

}  // namespace provchain
