// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/keccak.hpp>
#include <provchain/ledger.hpp>

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace provchain
{
namespace
{
[[noreturn]] void reject(ErrorCode code, const std::string& message)
{
    throw LedgerError{code, message};
}

bool add_overflows(std::uint64_t a, std::uint64_t b) noexcept
{
    return a > std::numeric_limits<std::uint64_t>::max() - b;
}

std::string batch_name(const Address& token, const BatchId& batch)
{
    return batch.hex() + "@" + token.hex();
}
}  // namespace

Ledger::Ledger(GasProfile gas) : gas_{std::move(gas)}
{
    gas_.costs.validate();
}

void Ledger::check_time(const TxContext& tx) const
{
    if (tx.timestamp < last_timestamp_)
        reject(ErrorCode::StaleTimestamp, "timestamp " + std::to_string(tx.timestamp) +
                                              " precedes " + std::to_string(last_timestamp_));
}

TokenContract& Ledger::token_or_throw(const Address& address)
{
    const auto it = tokens_.find(address);
    if (it == tokens_.end())
        reject(ErrorCode::UnknownContract, "no token contract at " + address.hex());
    return it->second;
}

Batch& Ledger::owned_batch_or_throw(const TxContext& tx, TokenContract& token, const BatchId& batch)
{
    const auto it = token.batches.find(batch);
    if (it == token.batches.end())
        reject(ErrorCode::UnknownBatch, batch_name(token.address, batch) + " does not exist");
    if (it->second.owner != tx.caller)
        reject(ErrorCode::NotBatchOwner,
               tx.caller.hex() + " does not own " + batch_name(token.address, batch));
    return it->second;
}

Address Ledger::fresh_contract_address(const Address& deployer) const
{
    for (std::uint64_t attempt = 0;; ++attempt)
    {
        std::vector<std::uint8_t> seed;
        seed.insert(seed.end(), deployer.bytes().begin(), deployer.bytes().end());
        append_be64(seed, height());
        append_be64(seed, attempt);
        const auto digest = keccak256(seed);
        const auto candidate =
            Address::from_span(std::span{digest}.last<Address::size>());
        if (!tokens_.contains(candidate) && !certificates_.contains(candidate) &&
            !participants_.contains(candidate) && candidate != deployer)
            return candidate;
    }
}

Deployment Ledger::deploy_token_contract(const TxContext& tx, std::string name,
                                         std::string unit_label, std::vector<RecipeInput> recipe)
{
    check_time(tx);
    for (const auto& input : recipe)
        if (input.amount_per_unit == 0)
            reject(ErrorCode::BadAmount, "recipe amounts must be at least 1");
    for (const auto& input : recipe)
    {
        const bool known = input.kind == RecipeInput::Source::SpecificToken
                               ? tokens_.contains(input.source)
                               : certificates_.contains(input.source);
        if (!known)
            reject(ErrorCode::UnknownSource,
                   "recipe source " + input.source.hex() + " is not a deployed " +
                       (input.kind == RecipeInput::Source::SpecificToken ? "token" : "certificate") +
                       " contract");
    }

    const auto address = fresh_contract_address(tx.caller);
    const auto inputs = recipe.size();
    commit(tx, event::ContractDeployed{address, tx.caller, ContractKind::Token, std::move(name),
                                       std::move(unit_label), std::move(recipe)});
    return {address, gas::deploy(gas_.costs, inputs, gas_.strategy)};
}

Deployment Ledger::deploy_certificate_contract(const TxContext& tx, std::string name)
{
    check_time(tx);
    const auto address = fresh_contract_address(tx.caller);
    commit(tx, event::ContractDeployed{address, tx.caller, ContractKind::Certificate,
                                       std::move(name), {}, {}});
    return {address, gas::deploy(gas_.costs, 0, gas_.strategy)};
}

void Ledger::certify(const TxContext& tx, const Address& certificate, const Address& token)
{
    check_time(tx);
    const auto* cert = find_certificate(certificate);
    if (!cert)
        reject(ErrorCode::UnknownContract, "no certificate contract at " + certificate.hex());
    if (cert->certifier != tx.caller)
        reject(ErrorCode::NotCertifier, tx.caller.hex() + " is not the certifier");
    if (!tokens_.contains(token))
        reject(ErrorCode::UnknownContract, "no token contract at " + token.hex());
    if (cert->is_active(token))
        reject(ErrorCode::AlreadyCertified, token.hex() + " is already certified");
    commit(tx, event::CertificateGranted{certificate, token});
}

void Ledger::revoke(const TxContext& tx, const Address& certificate, const Address& token)
{
    check_time(tx);
    const auto* cert = find_certificate(certificate);
    if (!cert)
        reject(ErrorCode::UnknownContract, "no certificate contract at " + certificate.hex());
    if (cert->certifier != tx.caller)
        reject(ErrorCode::NotCertifier, tx.caller.hex() + " is not the certifier");
    if (!cert->is_active(token))
        reject(ErrorCode::NotCertified, token.hex() + " holds no active certificate");
    commit(tx, event::CertificateRevoked{certificate, token});
}

Creation Ledger::add_batch(const TxContext& tx, const Address& token_address,
                           std::uint64_t product_amount, std::vector<InputAssignment> assignments)
{
    check_time(tx);
    const auto& token = token_or_throw(token_address);
    if (token.owner != tx.caller)
        reject(ErrorCode::NotOwner, "only the contract owner creates batches");
    if (product_amount == 0)
        reject(ErrorCode::BadAmount, "product amount must be at least 1");
    if (add_overflows(token.minted, product_amount))
        reject(ErrorCode::BadAmount, "product amount overflows the contract supply");

    const auto& recipe = token.recipe;
    if (assignments.size() != recipe.size())
        reject(ErrorCode::ArityMismatch, "expected " + std::to_string(recipe.size()) +
                                             " input assignments, got " +
                                             std::to_string(assignments.size()));
    std::sort(assignments.begin(), assignments.end(),
              [](const auto& a, const auto& b) { return a.recipe_index < b.recipe_index; });
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i].recipe_index != i)
            reject(ErrorCode::ArityMismatch, "each recipe entry needs exactly one assignment");

    std::vector<ConsumedInput> consumed;
    std::map<std::pair<Address, BatchId>, std::uint64_t> drawn_per_batch;
    std::uint64_t cert_checks = 0;
    for (const auto& assignment : assignments)
    {
        const auto& entry = recipe[assignment.recipe_index];
        if (entry.amount_per_unit > std::numeric_limits<std::uint64_t>::max() / product_amount)
            reject(ErrorCode::BadAmount, "required input amount overflows");
        const std::uint64_t required = product_amount * entry.amount_per_unit;

        std::uint64_t supplied = 0;
        for (const auto& draw : assignment.draws)
        {
            if (draw.amount == 0)
                reject(ErrorCode::BadAmount, "draw amounts must be at least 1");
            if (add_overflows(supplied, draw.amount))
                reject(ErrorCode::QuantityMismatch, "draw amounts overflow");
            supplied += draw.amount;
        }
        if (supplied != required)
            reject(ErrorCode::QuantityMismatch,
                   "recipe entry " + std::to_string(assignment.recipe_index) + " requires " +
                       std::to_string(required) + " units, got " + std::to_string(supplied));

        for (const auto& draw : assignment.draws)
        {
            const auto* source = find_token(draw.contract);
            if (!source)
                reject(ErrorCode::UnknownContract, "no token contract at " + draw.contract.hex());
            const auto it = source->batches.find(draw.batch);
            if (it == source->batches.end())
                reject(ErrorCode::UnknownBatch, batch_name(draw.contract, draw.batch) +
                                                    " does not exist");
            if (entry.kind == RecipeInput::Source::SpecificToken)
            {
                if (draw.contract != entry.source)
                    reject(ErrorCode::InputMismatch,
                           draw.contract.hex() + " is not the required input " + entry.source.hex());
            }
            else
            {
                ++cert_checks;
                if (!certificates_.at(entry.source).is_active(draw.contract))
                    reject(ErrorCode::NotCertified,
                           draw.contract.hex() + " is not certified by " + entry.source.hex());
            }
            if (it->second.owner != tx.caller)
                reject(ErrorCode::NotBatchOwner,
                       tx.caller.hex() + " does not own " + batch_name(draw.contract, draw.batch));
            auto& total = drawn_per_batch[{draw.contract, draw.batch}];
            total += draw.amount;
            if (total > it->second.amount)
                reject(ErrorCode::InsufficientBalance,
                       batch_name(draw.contract, draw.batch) + " holds " +
                           std::to_string(it->second.amount) + " units");
            consumed.push_back(draw);
        }
    }

    const auto id = derive_batch_id(consumed, tx.caller, tx.timestamp);
    if (token.batches.contains(id))
        reject(ErrorCode::IdCollision, "batch id " + id.hex() + " already exists");

    const auto inputs = consumed.size();
    commit(tx, event::BatchCreated{token_address, id, tx.caller, product_amount, std::move(consumed)});
    return {id, gas::add_batch(gas_.costs, inputs, gas_.mode, cert_checks)};
}

std::vector<BatchId> Ledger::split_batch(const TxContext& tx, const Address& token_address,
                                         const BatchId& batch,
                                         const std::vector<std::uint64_t>& parts)
{
    check_time(tx);
    auto& token = token_or_throw(token_address);
    const auto& parent = owned_batch_or_throw(tx, token, batch);
    if (parent.depleted())
        reject(ErrorCode::Depleted, batch_name(token_address, batch) + " is depleted");
    if (parts.size() < 2)
        reject(ErrorCode::BadPartition, "a split needs at least two parts");
    std::uint64_t sum = 0;
    for (const auto part : parts)
    {
        if (part == 0)
            reject(ErrorCode::BadPartition, "split parts must be positive");
        if (add_overflows(sum, part))
            reject(ErrorCode::BadPartition, "split parts overflow");
        sum += part;
    }
    if (sum != parent.amount)
        reject(ErrorCode::BadPartition, "parts sum to " + std::to_string(sum) + ", batch holds " +
                                            std::to_string(parent.amount));

    // Child k is derived from the first k + 1 draws of the partition, so equal parts still
    // yield distinct pre-images.
    std::vector<ConsumedInput> prefix;
    std::vector<BatchPart> children;
    std::vector<BatchId> ids;
    for (const auto part : parts)
    {
        prefix.push_back({token_address, batch, part});
        const auto id = derive_batch_id(prefix, tx.caller, tx.timestamp);
        if (token.batches.contains(id) || std::find(ids.begin(), ids.end(), id) != ids.end())
            reject(ErrorCode::IdCollision, "batch id " + id.hex() + " already exists");
        ids.push_back(id);
        children.push_back({id, part});
    }
    commit(tx, event::BatchSplit{token_address, batch, tx.caller, std::move(children)});
    return ids;
}

BatchId Ledger::merge_batch(const TxContext& tx, const Address& token_address,
                            const std::vector<BatchId>& batches)
{
    check_time(tx);
    auto& token = token_or_throw(token_address);
    if (batches.size() < 2)
        reject(ErrorCode::BadMerge, "a merge needs at least two batches");
    std::set<BatchId> distinct(batches.begin(), batches.end());
    if (distinct.size() != batches.size())
        reject(ErrorCode::BadMerge, "merge inputs must be distinct");

    std::vector<ConsumedInput> preimage;
    std::vector<BatchPart> parents;
    std::uint64_t sum = 0;
    for (const auto& id : batches)
    {
        const auto& b = owned_batch_or_throw(tx, token, id);
        if (b.depleted())
            reject(ErrorCode::BadMerge, batch_name(token_address, id) + " is depleted");
        if (add_overflows(sum, b.amount))
            reject(ErrorCode::BadMerge, "merged amount overflows");
        sum += b.amount;
        preimage.push_back({token_address, id, b.amount});
        parents.push_back({id, b.amount});
    }

    const auto id = derive_batch_id(preimage, tx.caller, tx.timestamp);
    if (token.batches.contains(id))
        reject(ErrorCode::IdCollision, "batch id " + id.hex() + " already exists");
    commit(tx, event::BatchMerged{token_address, id, tx.caller, std::move(parents)});
    return id;
}

void Ledger::transfer_batch(const TxContext& tx, const Address& token_address, const BatchId& batch,
                            const Address& to)
{
    check_time(tx);
    auto& token = token_or_throw(token_address);
    const auto& b = owned_batch_or_throw(tx, token, batch);
    if (b.depleted())
        reject(ErrorCode::Depleted, batch_name(token_address, batch) + " is depleted");
    commit(tx, event::BatchTransferred{token_address, batch, tx.caller, to});
}

void Ledger::consume_batch(const TxContext& tx, const Address& token_address, const BatchId& batch,
                           std::uint64_t amount)
{
    check_time(tx);
    auto& token = token_or_throw(token_address);
    const auto& b = owned_batch_or_throw(tx, token, batch);
    if (amount == 0)
        reject(ErrorCode::BadAmount, "consumed amount must be at least 1");
    if (b.depleted())
        reject(ErrorCode::Depleted, batch_name(token_address, batch) + " is depleted");
    if (amount > b.amount)
        reject(ErrorCode::InsufficientBalance, batch_name(token_address, batch) + " holds " +
                                                   std::to_string(b.amount) + " units");
    commit(tx, event::BatchConsumed{token_address, batch, tx.caller, amount});
}

std::uint64_t Ledger::balance_of(const Address& owner, const Address& token) const
{
    const auto* t = find_token(token);
    if (!t)
        reject(ErrorCode::UnknownContract, "no token contract at " + token.hex());
    std::uint64_t sum = 0;
    for (const auto& [_, b] : t->batches)
        if (b.owner == owner && !b.depleted())
            sum += b.amount;
    return sum;
}

const TokenContract* Ledger::find_token(const Address& address) const
{
    const auto it = tokens_.find(address);
    return it == tokens_.end() ? nullptr : &it->second;
}

const CertificateContract* Ledger::find_certificate(const Address& address) const
{
    const auto it = certificates_.find(address);
    return it == certificates_.end() ? nullptr : &it->second;
}

const Batch* Ledger::find_batch(const Address& token, const BatchId& batch) const
{
    const auto* t = find_token(token);
    if (!t)
        return nullptr;
    const auto it = t->batches.find(batch);
    return it == t->batches.end() ? nullptr : &it->second;
}

void Ledger::commit(const TxContext& tx, EventPayload payload)
{
    LedgerEvent e{events_.size(), tx.timestamp, tx.caller, std::move(payload)};
    apply(e);
    events_.append(std::move(e));
}

void Ledger::apply(const LedgerEvent& e)
{
    const LogicalTime now{e.index, e.timestamp};
    participants_.insert(e.caller);
    last_timestamp_ = std::max(last_timestamp_, e.timestamp);

    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, event::ContractDeployed>)
            {
                participants_.insert(p.owner);
                if (p.kind == ContractKind::Token)
                    tokens_.emplace(p.contract, TokenContract{p.contract, p.owner, p.name,
                                                              p.unit_label, p.recipe, {}, 0, 0});
                else
                    certificates_.emplace(p.contract,
                                          CertificateContract{p.contract, p.owner, p.name, {}, {}});
            }
            else if constexpr (std::is_same_v<T, event::CertificateGranted> ||
                               std::is_same_v<T, event::CertificateRevoked>)
            {
                constexpr auto status = std::is_same_v<T, event::CertificateGranted>
                                            ? CertStatus::Active
                                            : CertStatus::Revoked;
                auto& cert = certificates_.at(p.certificate);
                cert.history.push_back({p.token, status, e.index});
                cert.current[p.token] = status;
            }
            else if constexpr (std::is_same_v<T, event::BatchCreated>)
            {
                for (const auto& in : p.inputs)
                {
                    auto& source = tokens_.at(in.contract);
                    source.batches.at(in.batch).amount -= in.amount;
                    source.burned += in.amount;
                }
                auto& token = tokens_.at(p.contract);
                token.batches.emplace(p.batch, Batch{p.batch, p.amount, p.owner, now,
                                                     lineage::Created{p.inputs}});
                token.minted += p.amount;
                participants_.insert(p.owner);
            }
            else if constexpr (std::is_same_v<T, event::BatchSplit>)
            {
                auto& token = tokens_.at(p.contract);
                token.batches.at(p.parent).amount = 0;
                for (const auto& child : p.children)
                    token.batches.emplace(child.batch, Batch{child.batch, child.amount, p.owner, now,
                                                             lineage::SplitFrom{p.parent}});
            }
            else if constexpr (std::is_same_v<T, event::BatchMerged>)
            {
                auto& token = tokens_.at(p.contract);
                lineage::MergedFrom from;
                std::uint64_t sum = 0;
                for (const auto& parent : p.parents)
                {
                    token.batches.at(parent.batch).amount = 0;
                    from.parents.push_back(parent.batch);
                    sum += parent.amount;
                }
                token.batches.emplace(p.batch, Batch{p.batch, sum, p.owner, now, std::move(from)});
            }
            else if constexpr (std::is_same_v<T, event::BatchTransferred>)
            {
                tokens_.at(p.contract).batches.at(p.batch).owner = p.to;
                participants_.insert(p.to);
            }
            else if constexpr (std::is_same_v<T, event::BatchConsumed>)
            {
                auto& token = tokens_.at(p.contract);
                token.batches.at(p.batch).amount -= p.amount;
                token.burned += p.amount;
            }
        },
        e.payload);
}

Ledger Ledger::from_events(const EventLog& log, GasProfile gas)
{
    Ledger ledger{std::move(gas)};
    for (const auto& e : log.all())
    {
        ledger.apply(e);
        ledger.events_.append(e);
    }
    return ledger;
}

}  // namespace provchain
