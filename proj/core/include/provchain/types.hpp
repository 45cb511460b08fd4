// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/ident.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace provchain
{
enum class ContractKind
{
    Token,
    Certificate,
};

/// One ingredient of a product recipe.
struct RecipeInput
{
    enum class Source
    {
        /// Batches of exactly this token contract.
        SpecificToken,
        /// Batches of any token contract currently certified by this certificate contract.
        CertifiedBy,
    };

    Source kind = Source::SpecificToken;
    Address source;
    std::uint64_t amount_per_unit = 1;

    static RecipeInput token(const Address& contract, std::uint64_t per_unit = 1)
    {
        return {Source::SpecificToken, contract, per_unit};
    }
    static RecipeInput certified_by(const Address& certificate, std::uint64_t per_unit = 1)
    {
        return {Source::CertifiedBy, certificate, per_unit};
    }

    friend bool operator==(const RecipeInput&, const RecipeInput&) = default;
};

/// Batches drawn for one recipe entry when a product batch is created.
struct InputAssignment
{
    std::size_t recipe_index = 0;
    std::vector<ConsumedInput> draws;
};

/// A batch id together with an amount, used for split children and merge parents.
struct BatchPart
{
    BatchId batch;
    std::uint64_t amount = 0;

    friend bool operator==(const BatchPart&, const BatchPart&) = default;
};

struct BatchRef
{
    Address contract;
    BatchId batch;

    friend auto operator<=>(const BatchRef&, const BatchRef&) = default;
};

namespace lineage
{
struct Created
{
    std::vector<ConsumedInput> inputs;
    friend bool operator==(const Created&, const Created&) = default;
};
struct SplitFrom
{
    BatchId parent;
    friend bool operator==(const SplitFrom&, const SplitFrom&) = default;
};
struct MergedFrom
{
    std::vector<BatchId> parents;
    friend bool operator==(const MergedFrom&, const MergedFrom&) = default;
};
}  // namespace lineage

using Lineage = std::variant<lineage::Created, lineage::SplitFrom, lineage::MergedFrom>;

}  // namespace provchain
