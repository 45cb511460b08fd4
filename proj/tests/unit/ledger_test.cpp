// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/ledger.hpp>
#include <provchain/provenance.hpp>
#include <provchain/store.hpp>

#include "scenario.hpp"

#include <gtest/gtest.h>

#include <optional>

using namespace provchain;
using provchain::testkit::filled_address;

namespace
{
template <class F>
std::optional<ErrorCode> error_of(F&& f)
{
    try
    {
        f();
    }
    catch (const LedgerError& e)
    {
        return e.code();
    }
    return std::nullopt;
}

class LedgerTest : public ::testing::Test
{
protected:
    TxContext as(const Address& who) { return {who, ++clock_}; }

    /// Expects `f` to be rejected with `code` and to leave the state digest untouched.
    template <class F>
    void expect_rejected(ErrorCode code, F&& f)
    {
        const auto before = state_digest(ledger);
        const auto height = ledger.height();
        EXPECT_EQ(error_of(std::forward<F>(f)), code);
        EXPECT_EQ(state_digest(ledger), before);
        EXPECT_EQ(ledger.height(), height);
    }

    /// The wood-processing chain up to the sawmill holding its inputs.
    void build_chain()
    {
        logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
        glue = ledger.deploy_token_contract(as(glue_plant), "Glue", "litres", {}).address;
        cert = ledger.deploy_certificate_contract(as(certifier), "FSC-Quality").address;
        ledger.certify(as(certifier), cert, logs);
        wood = ledger
                   .deploy_token_contract(as(sawmill), "EdgeGluedWood", "units",
                                          {RecipeInput::certified_by(cert, 1),
                                           RecipeInput::token(glue, 1)})
                   .address;
        log_batch = ledger.add_batch(as(forester), logs, 30, {}).batch;
        glue_batch = ledger.add_batch(as(glue_plant), glue, 60, {}).batch;
        const auto parts = ledger.split_batch(as(forester), logs, log_batch, {20, 10});
        const auto glue_parts = ledger.split_batch(as(glue_plant), glue, glue_batch, {59, 1});
        ledger.transfer_batch(as(forester), logs, parts[1], sawmill);
        ledger.transfer_batch(as(glue_plant), glue, glue_parts[1], sawmill);
        sawmill_logs = parts[1];
        sawmill_glue = glue_parts[1];
    }

    std::vector<InputAssignment> one_of_each() const
    {
        return {{0, {{logs, sawmill_logs, 1}}}, {1, {{glue, sawmill_glue, 1}}}};
    }

    Ledger ledger;
    std::uint64_t clock_ = 1'000;
    const Address forester = filled_address(0xF0);
    const Address glue_plant = filled_address(0x61);
    const Address sawmill = filled_address(0x5A);
    const Address certifier = filled_address(0xCE);
    const Address stranger = filled_address(0xEE);
    Address logs, glue, cert, wood;
    BatchId log_batch, glue_batch, sawmill_logs, sawmill_glue;
};
}  // namespace

TEST_F(LedgerTest, deploy_resource_contract)
{
    const auto d = ledger.deploy_token_contract(as(forester), "Logs", "logs", {});
    const auto* t = ledger.find_token(d.address);
    ASSERT_NE(t, nullptr);
    EXPECT_EQ(t->owner, forester);
    EXPECT_TRUE(t->recipe.empty());
    EXPECT_EQ(d.gas.total, gas::CostTable{}.deploy_base);
    EXPECT_EQ(ledger.events().size(), 1u);
    EXPECT_EQ(ledger.events()[0].kind(), EventKind::ContractDeployed);
}

TEST_F(LedgerTest, deploy_producer_contract)
{
    build_chain();
    const auto* t = ledger.find_token(wood);
    ASSERT_EQ(t->recipe.size(), 2u);
    EXPECT_EQ(t->recipe[0], RecipeInput::certified_by(cert, 1));
    EXPECT_EQ(t->recipe[1], RecipeInput::token(glue, 1));
}

TEST_F(LedgerTest, deploy_errors)
{
    const auto logs_address = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    expect_rejected(ErrorCode::BadAmount, [&] {
        ledger.deploy_token_contract(as(sawmill), "X", "u", {RecipeInput::token(logs_address, 0)});
    });
    expect_rejected(ErrorCode::UnknownSource, [&] {
        ledger.deploy_token_contract(as(sawmill), "X", "u", {RecipeInput::token(stranger, 1)});
    });
    // A token address is not a certificate source and vice versa.
    expect_rejected(ErrorCode::UnknownSource, [&] {
        ledger.deploy_token_contract(as(sawmill), "X", "u",
                                     {RecipeInput::certified_by(logs_address, 1)});
    });
}

TEST_F(LedgerTest, certificate_deployments_are_distinct)
{
    const auto a = ledger.deploy_certificate_contract(as(certifier), "FSC-Quality");
    const auto b = ledger.deploy_certificate_contract(as(certifier), "FSC-Quality");
    EXPECT_NE(a.address, b.address);
    EXPECT_TRUE(ledger.find_certificate(a.address)->current.empty());
    EXPECT_EQ(ledger.events().size(), 2u);
}

TEST_F(LedgerTest, certify_and_revoke)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    cert = ledger.deploy_certificate_contract(as(certifier), "FSC-Quality").address;
    expect_rejected(ErrorCode::NotCertifier, [&] { ledger.certify(as(stranger), cert, logs); });
    expect_rejected(ErrorCode::UnknownContract, [&] { ledger.certify(as(certifier), cert, stranger); });
    expect_rejected(ErrorCode::UnknownContract, [&] { ledger.certify(as(certifier), stranger, logs); });
    expect_rejected(ErrorCode::NotCertified, [&] { ledger.revoke(as(certifier), cert, logs); });

    ledger.certify(as(certifier), cert, logs);
    EXPECT_TRUE(ledger.find_certificate(cert)->is_active(logs));
    expect_rejected(ErrorCode::AlreadyCertified, [&] { ledger.certify(as(certifier), cert, logs); });

    expect_rejected(ErrorCode::NotCertifier, [&] { ledger.revoke(as(forester), cert, logs); });
    ledger.revoke(as(certifier), cert, logs);
    EXPECT_FALSE(ledger.find_certificate(cert)->is_active(logs));
    expect_rejected(ErrorCode::NotCertified, [&] { ledger.revoke(as(certifier), cert, logs); });

    // Grant history is append-only and re-certification is allowed after a revoke.
    ledger.certify(as(certifier), cert, logs);
    EXPECT_EQ(ledger.find_certificate(cert)->history.size(), 3u);
}

TEST_F(LedgerTest, resource_batch_without_inputs)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    const auto c = ledger.add_batch(as(forester), logs, 30, {});
    const auto* b = ledger.find_batch(logs, c.batch);
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->amount, 30u);
    EXPECT_EQ(b->owner, forester);
    EXPECT_EQ(c.batch, derive_batch_id({}, forester, clock_));
    EXPECT_EQ(c.gas.total, 92'756u);
    EXPECT_EQ(ledger.balance_of(forester, logs), 30u);
}

TEST_F(LedgerTest, acceptance_scenario_balances)
{
    build_chain();
    const auto c = ledger.add_batch(as(sawmill), wood, 1, one_of_each());
    EXPECT_EQ(c.gas.total, 92'756u + 2 * 19'241u);
    EXPECT_EQ(ledger.balance_of(forester, logs), 20u);
    EXPECT_EQ(ledger.balance_of(glue_plant, glue), 59u);
    EXPECT_EQ(ledger.balance_of(sawmill, logs), 9u);
    EXPECT_EQ(ledger.balance_of(sawmill, glue), 0u);
    EXPECT_EQ(ledger.balance_of(sawmill, wood), 1u);

    const auto* product = ledger.find_batch(wood, c.batch);
    const auto& created = std::get<lineage::Created>(product->lineage);
    ASSERT_EQ(created.inputs.size(), 2u);
    EXPECT_EQ(created.inputs[0], (ConsumedInput{logs, sawmill_logs, 1}));
    const std::vector<ConsumedInput> draws{{logs, sawmill_logs, 1}, {glue, sawmill_glue, 1}};
    EXPECT_EQ(c.batch, derive_batch_id(draws, sawmill, clock_));
}

TEST_F(LedgerTest, add_batch_errors_are_atomic)
{
    build_chain();
    expect_rejected(ErrorCode::NotOwner,
                    [&] { ledger.add_batch(as(forester), wood, 1, one_of_each()); });
    expect_rejected(ErrorCode::BadAmount, [&] { ledger.add_batch(as(sawmill), wood, 0, {}); });
    expect_rejected(ErrorCode::ArityMismatch, [&] {
        ledger.add_batch(as(sawmill), wood, 1, {{0, {{logs, sawmill_logs, 1}}}});
    });
    expect_rejected(ErrorCode::ArityMismatch, [&] {
        ledger.add_batch(as(forester), logs, 1, {{0, {{logs, sawmill_logs, 1}}}});
    });
    expect_rejected(ErrorCode::QuantityMismatch, [&] {
        ledger.add_batch(as(sawmill), wood, 1,
                         {{0, {{logs, sawmill_logs, 2}}}, {1, {{glue, sawmill_glue, 1}}}});
    });
    expect_rejected(ErrorCode::InsufficientBalance, [&] {
        ledger.add_batch(as(sawmill), wood, 2,
                         {{0, {{logs, sawmill_logs, 2}}}, {1, {{glue, sawmill_glue, 2}}}});
    });
    // Drawing from a batch someone else owns.
    const auto forester_batch = ledger.add_batch(as(forester), logs, 5, {}).batch;
    expect_rejected(ErrorCode::NotBatchOwner, [&] {
        ledger.add_batch(as(sawmill), wood, 1,
                         {{0, {{logs, forester_batch, 1}}}, {1, {{glue, sawmill_glue, 1}}}});
    });
    expect_rejected(ErrorCode::UnknownBatch, [&] {
        ledger.add_batch(as(sawmill), wood, 1,
                         {{0, {{logs, BatchId{}, 1}}}, {1, {{glue, sawmill_glue, 1}}}});
    });
    // Glue drawn where a specific Logs contract is not allowed and vice versa.
    expect_rejected(ErrorCode::InputMismatch, [&] {
        ledger.add_batch(as(sawmill), wood, 1,
                         {{0, {{logs, sawmill_logs, 1}}}, {1, {{logs, sawmill_logs, 1}}}});
    });
    expect_rejected(ErrorCode::NotCertified, [&] {
        ledger.add_batch(as(sawmill), wood, 1,
                         {{0, {{glue, sawmill_glue, 1}}}, {1, {{glue, sawmill_glue, 1}}}});
    });
}

TEST_F(LedgerTest, revoked_certificate_blocks_new_batches_only)
{
    build_chain();
    const auto first = ledger.add_batch(as(sawmill), wood, 1, one_of_each()).batch;
    const auto lineage_before = ledger.find_batch(wood, first)->lineage;
    ledger.revoke(as(certifier), cert, logs);

    const auto glue_amount = ledger.find_batch(glue, sawmill_glue)->amount;
    expect_rejected(ErrorCode::NotCertified, [&] {
        ledger.add_batch(as(sawmill), wood, 1, one_of_each());
    });
    EXPECT_EQ(ledger.find_batch(glue, sawmill_glue)->amount, glue_amount);
    EXPECT_EQ(ledger.find_batch(wood, first)->lineage, lineage_before);
    EXPECT_NO_THROW(trace_provenance(ledger.events(), wood, first));
}

TEST_F(LedgerTest, id_collision_in_same_second)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    const TxContext same{forester, ++clock_};
    ledger.add_batch(same, logs, 5, {});
    expect_rejected(ErrorCode::IdCollision, [&] { ledger.add_batch(same, logs, 7, {}); });
}

TEST_F(LedgerTest, stale_timestamp_rejected)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    expect_rejected(ErrorCode::StaleTimestamp,
                    [&] { ledger.add_batch({forester, clock_ - 1}, logs, 5, {}); });
    EXPECT_NO_THROW(ledger.add_batch({forester, clock_}, logs, 5, {}));
}

TEST_F(LedgerTest, split)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    const auto b = ledger.add_batch(as(forester), logs, 30, {}).batch;
    const auto ten = ledger.add_batch(as(forester), logs, 10, {}).batch;

    expect_rejected(ErrorCode::BadPartition, [&] { ledger.split_batch(as(forester), logs, ten, {10}); });
    expect_rejected(ErrorCode::BadPartition, [&] { ledger.split_batch(as(forester), logs, ten, {0, 10}); });
    expect_rejected(ErrorCode::BadPartition, [&] { ledger.split_batch(as(forester), logs, ten, {4, 5}); });
    expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.split_batch(as(stranger), logs, ten, {5, 5}); });

    const auto children = ledger.split_batch(as(forester), logs, b, {10, 20});
    ASSERT_EQ(children.size(), 2u);
    EXPECT_EQ(ledger.find_batch(logs, children[0])->amount, 10u);
    EXPECT_EQ(ledger.find_batch(logs, children[1])->amount, 20u);
    EXPECT_TRUE(ledger.find_batch(logs, b)->depleted());
    EXPECT_EQ(ledger.balance_of(forester, logs), 40u);
    EXPECT_EQ(std::get<lineage::SplitFrom>(ledger.find_batch(logs, children[0])->lineage).parent, b);

    // Equal parts still get distinct ids.
    const auto halves = ledger.split_batch(as(forester), logs, ten, {5, 5});
    EXPECT_NE(halves[0], halves[1]);
    expect_rejected(ErrorCode::Depleted, [&] { ledger.split_batch(as(forester), logs, b, {1, 1}); });
}

TEST_F(LedgerTest, merge)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    const auto a = ledger.add_batch(as(forester), logs, 10, {}).batch;
    const auto b = ledger.add_batch(as(forester), logs, 20, {}).batch;

    expect_rejected(ErrorCode::BadMerge, [&] { ledger.merge_batch(as(forester), logs, {a, a}); });
    expect_rejected(ErrorCode::BadMerge, [&] { ledger.merge_batch(as(forester), logs, {a}); });
    expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.merge_batch(as(stranger), logs, {a, b}); });

    const auto m = ledger.merge_batch(as(forester), logs, {a, b});
    EXPECT_EQ(ledger.find_batch(logs, m)->amount, 30u);
    EXPECT_TRUE(ledger.find_batch(logs, a)->depleted());
    EXPECT_TRUE(ledger.find_batch(logs, b)->depleted());
    EXPECT_EQ(ledger.balance_of(forester, logs), 30u);
    const auto& parents = std::get<lineage::MergedFrom>(ledger.find_batch(logs, m)->lineage).parents;
    EXPECT_EQ(parents, (std::vector<BatchId>{a, b}));

    const auto c = ledger.add_batch(as(forester), logs, 3, {}).batch;
    expect_rejected(ErrorCode::BadMerge, [&] { ledger.merge_batch(as(forester), logs, {a, c}); });
}

TEST_F(LedgerTest, transfer)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    const auto b = ledger.add_batch(as(forester), logs, 10, {}).batch;
    expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.transfer_batch(as(sawmill), logs, b, sawmill); });

    ledger.transfer_batch(as(forester), logs, b, sawmill);
    EXPECT_EQ(ledger.find_batch(logs, b)->owner, sawmill);
    EXPECT_EQ(ledger.balance_of(sawmill, logs), 10u);

    const auto height = ledger.height();
    ledger.transfer_batch(as(sawmill), logs, b, sawmill);
    EXPECT_EQ(ledger.find_batch(logs, b)->owner, sawmill);
    EXPECT_EQ(ledger.height(), height + 1);
    EXPECT_EQ(ledger.events()[height].kind(), EventKind::BatchTransferred);

    ledger.consume_batch(as(sawmill), logs, b, 10);
    expect_rejected(ErrorCode::Depleted, [&] { ledger.transfer_batch(as(sawmill), logs, b, forester); });
}

TEST_F(LedgerTest, consume)
{
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    const auto b = ledger.add_batch(as(forester), logs, 10, {}).batch;
    expect_rejected(ErrorCode::InsufficientBalance, [&] { ledger.consume_batch(as(forester), logs, b, 11); });
    expect_rejected(ErrorCode::BadAmount, [&] { ledger.consume_batch(as(forester), logs, b, 0); });
    expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.consume_batch(as(stranger), logs, b, 1); });

    ledger.consume_batch(as(forester), logs, b, 1);
    EXPECT_EQ(ledger.find_batch(logs, b)->amount, 9u);
    ledger.consume_batch(as(forester), logs, b, 9);
    EXPECT_TRUE(ledger.find_batch(logs, b)->depleted());
    EXPECT_EQ(ledger.balance_of(forester, logs), 0u);
    EXPECT_EQ(trace_provenance(ledger.events(), logs, b)->batch, b);
}

TEST_F(LedgerTest, balance_of)
{
    EXPECT_EQ(error_of([&] { ledger.balance_of(forester, stranger); }), ErrorCode::UnknownContract);
    logs = ledger.deploy_token_contract(as(forester), "Logs", "logs", {}).address;
    EXPECT_EQ(ledger.balance_of(stranger, logs), 0u);
}

TEST_F(LedgerTest, authorization_matrix)
{
    build_chain();
    // Every write by a party without the required role is refused; the rightful party succeeds.
    const auto fresh = ledger.add_batch(as(forester), logs, 4, {}).batch;
    for (const auto& who : {glue_plant, sawmill, certifier, stranger})
    {
        expect_rejected(ErrorCode::NotOwner, [&] { ledger.add_batch(as(who), logs, 1, {}); });
        expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.consume_batch(as(who), logs, fresh, 1); });
        expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.split_batch(as(who), logs, fresh, {2, 2}); });
        expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.transfer_batch(as(who), logs, fresh, who); });
    }
    for (const auto& who : {forester, glue_plant, sawmill, stranger})
    {
        expect_rejected(ErrorCode::NotCertifier, [&] { ledger.certify(as(who), cert, glue); });
        expect_rejected(ErrorCode::NotCertifier, [&] { ledger.revoke(as(who), cert, logs); });
    }
    // Batch ownership follows transfers, not contract ownership.
    ledger.transfer_batch(as(forester), logs, fresh, glue_plant);
    expect_rejected(ErrorCode::NotBatchOwner, [&] { ledger.consume_batch(as(forester), logs, fresh, 1); });
    EXPECT_NO_THROW(ledger.consume_batch(as(glue_plant), logs, fresh, 1));
}

TEST_F(LedgerTest, recipe_enforcement_holds_for_every_created_batch)
{
    build_chain();
    ledger.add_batch(as(sawmill), wood, 1, one_of_each());
    for (const auto& e : ledger.events().all())
    {
        const auto* c = std::get_if<event::BatchCreated>(&e.payload);
        if (!c || c->inputs.empty())
            continue;
        const auto* token = ledger.find_token(c->contract);
        std::vector<std::uint64_t> per_entry(token->recipe.size());
        for (const auto& in : c->inputs)
        {
            const auto* cert_contract = ledger.find_certificate(token->recipe[0].source);
            const auto entry = in.contract == glue ? 1u : 0u;
            if (entry == 0)
            {
                EXPECT_TRUE(cert_contract->is_active(in.contract));
            }
            per_entry[entry] += in.amount;
        }
        for (std::size_t i = 0; i < per_entry.size(); ++i)
            EXPECT_EQ(per_entry[i], c->amount * token->recipe[i].amount_per_unit);
    }
}

TEST_F(LedgerTest, rebuild_from_events)
{
    build_chain();
    ledger.add_batch(as(sawmill), wood, 1, one_of_each());
    ledger.consume_batch(as(sawmill), logs, sawmill_logs, 2);
    const auto rebuilt = Ledger::from_events(ledger.events());
    EXPECT_EQ(state_digest(rebuilt), state_digest(ledger));
    EXPECT_EQ(rebuilt.balance_of(sawmill, wood), 1u);
}
