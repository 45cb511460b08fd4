// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/events.hpp>

#include <cstdint>
#include <memory>
#include <vector>

namespace provchain
{
struct ProvenanceNode;

struct ProvenanceEdge
{
    std::uint64_t drawn = 0;
    std::shared_ptr<const ProvenanceNode> node;
};

/// Upstream composition of one batch. Subtrees reached along several paths are shared in
/// memory; serializers render them once per path.
struct ProvenanceNode
{
    Address contract;
    BatchId batch;
    std::uint64_t amount_at_creation = 0;
    LineageKind kind = LineageKind::Created;
    std::vector<ProvenanceEdge> children;

    bool is_resource() const noexcept { return kind == LineageKind::Created && children.empty(); }

    /// Node count of the rendered tree (shared subtrees counted once per occurrence).
    std::uint64_t rendered_size() const;
    /// Edge count of the rendered tree.
    std::uint64_t rendered_edges() const { return rendered_size() - 1; }
};

/// Full upstream tree rebuilt from the event log. Throws LedgerError(UnknownBatch).
std::shared_ptr<const ProvenanceNode> trace_provenance(const EventLog& log, const Address& contract,
                                                       const BatchId& batch);

/// Every batch whose composition contains the given batch, in creation order.
/// Throws LedgerError(UnknownBatch).
std::vector<BatchRef> track_descendants(const EventLog& log, const Address& contract,
                                        const BatchId& batch);

/// Chain of custody: creation, transfers and consumption of one batch. Custody is not part
/// of the composition tree. Throws LedgerError(UnknownBatch).
std::vector<LedgerEvent> custody_history(const EventLog& log, const Address& contract,
                                         const BatchId& batch);

}  // namespace provchain
