// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/errors.hpp>
#include <provchain/events.hpp>
#include <provchain/gas.hpp>
#include <provchain/ident.hpp>
#include <provchain/types.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace provchain
{
/// Accepted-transaction ordinal plus the gateway-supplied wall-clock seconds.
struct LogicalTime
{
    std::uint64_t tx_index = 0;
    std::uint64_t seconds = 0;
    friend bool operator==(const LogicalTime&, const LogicalTime&) = default;
};

struct Batch
{
    BatchId id;
    std::uint64_t amount = 0;
    Address owner;
    LogicalTime created_at;
    Lineage lineage;

    bool depleted() const noexcept { return amount == 0; }
};

struct TokenContract
{
    Address address;
    Address owner;
    std::string name;
    std::string unit_label;
    std::vector<RecipeInput> recipe;
    std::map<BatchId, Batch> batches;
    /// Units ever created by add_batch and units ever consumed (directly or as recipe inputs).
    std::uint64_t minted = 0;
    std::uint64_t burned = 0;

    bool is_resource() const noexcept { return recipe.empty(); }
};

enum class CertStatus
{
    Active,
    Revoked,
};

struct CertificateEntry
{
    Address token;
    CertStatus status = CertStatus::Active;
    std::uint64_t tx_index = 0;
};

struct CertificateContract
{
    Address address;
    Address certifier;
    std::string name;
    /// Append-only grant/revoke history; `current` is derived from it.
    std::vector<CertificateEntry> history;
    std::map<Address, CertStatus> current;

    bool is_active(const Address& token) const
    {
        const auto it = current.find(token);
        return it != current.end() && it->second == CertStatus::Active;
    }
};

/// Declared caller and gateway timestamp of one transaction.
struct TxContext
{
    Address caller;
    std::uint64_t timestamp = 0;
};

/// Gas accounting profile used for the receipts returned by deployments and add_batch.
struct GasProfile
{
    gas::CostTable costs;
    gas::StorageStrategy strategy = gas::StorageStrategy::Uint256;
    gas::BatchMode mode = gas::BatchMode::EmitEvents;
};

struct Deployment
{
    Address address;
    gas::GasReceipt gas;
};

struct Creation
{
    BatchId batch;
    gas::GasReceipt gas;
};

/// Transactional state machine over token and certificate contracts.
///
/// Every operation validates completely before touching state and then commits exactly one
/// event; state is only ever mutated by applying that event. A rejected operation throws
/// LedgerError and leaves the ledger untouched, so the event log alone reproduces the state.
class Ledger
{
public:
    explicit Ledger(GasProfile gas = {});

    Deployment deploy_token_contract(const TxContext& tx, std::string name, std::string unit_label,
                                     std::vector<RecipeInput> recipe);
    Deployment deploy_certificate_contract(const TxContext& tx, std::string name);

    void certify(const TxContext& tx, const Address& certificate, const Address& token);
    void revoke(const TxContext& tx, const Address& certificate, const Address& token);

    /// Creates a batch of `product_amount` units, consuming exactly one assignment per recipe
    /// entry. Resource contracts take no assignments.
    Creation add_batch(const TxContext& tx, const Address& token, std::uint64_t product_amount,
                       std::vector<InputAssignment> assignments);

    std::vector<BatchId> split_batch(const TxContext& tx, const Address& token, const BatchId& batch,
                                     const std::vector<std::uint64_t>& parts);
    BatchId merge_batch(const TxContext& tx, const Address& token,
                        const std::vector<BatchId>& batches);
    void transfer_batch(const TxContext& tx, const Address& token, const BatchId& batch,
                        const Address& to);
    void consume_batch(const TxContext& tx, const Address& token, const BatchId& batch,
                       std::uint64_t amount);

    /// Sum over live batches of `token` owned by `owner`. Throws UnknownContract.
    std::uint64_t balance_of(const Address& owner, const Address& token) const;

    const TokenContract* find_token(const Address& address) const;
    const CertificateContract* find_certificate(const Address& address) const;
    const Batch* find_batch(const Address& token, const BatchId& batch) const;

    const std::map<Address, TokenContract>& tokens() const noexcept { return tokens_; }
    const std::map<Address, CertificateContract>& certificates() const noexcept
    {
        return certificates_;
    }
    /// Every address that has acted, owned, or received a batch.
    const std::set<Address>& participants() const noexcept { return participants_; }

    const EventLog& events() const noexcept { return events_; }
    /// Number of accepted transactions.
    std::uint64_t height() const noexcept { return events_.size(); }
    std::uint64_t last_timestamp() const noexcept { return last_timestamp_; }
    const GasProfile& gas_profile() const noexcept { return gas_; }

    /// Rebuilds the state by applying the events in order, without re-validating them.
    static Ledger from_events(const EventLog& log, GasProfile gas = {});

private:
    void check_time(const TxContext& tx) const;
    TokenContract& token_or_throw(const Address& address);
    Batch& owned_batch_or_throw(const TxContext& tx, TokenContract& token, const BatchId& batch);
    Address fresh_contract_address(const Address& deployer) const;

    void commit(const TxContext& tx, EventPayload payload);
    void apply(const LedgerEvent& e);

    GasProfile gas_;
    std::map<Address, TokenContract> tokens_;
    std::map<Address, CertificateContract> certificates_;
    std::set<Address> participants_;
    std::uint64_t last_timestamp_ = 0;
    EventLog events_;
};

}  // namespace provchain
