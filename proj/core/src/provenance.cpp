// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/errors.hpp>
#include <provchain/provenance.hpp>

#include <algorithm>
#include <deque>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace provchain
{
namespace
{
const LineageRecord& require_record(const EventLog& log, const Address& contract,
                                    const BatchId& batch)
{
    const auto* rec = log.lineage().find(pack_slot(contract, batch));
    if (!rec)
        throw LedgerError{ErrorCode::UnknownBatch,
                          "batch " + batch.hex() + " of " + contract.hex() + " does not exist"};
    return *rec;
}

using NodeCache = std::unordered_map<Word32, std::shared_ptr<const ProvenanceNode>>;

std::shared_ptr<const ProvenanceNode> build(const LineageGraph& graph, const LineageRecord& rec,
                                            NodeCache& cache)
{
    const auto slot = pack_slot(rec.contract, rec.batch);
    if (const auto it = cache.find(slot); it != cache.end())
        return it->second;

    auto node = std::make_shared<ProvenanceNode>();
    node->contract = rec.contract;
    node->batch = rec.batch;
    node->amount_at_creation = rec.amount_at_creation;
    node->kind = rec.kind;
    node->children.reserve(rec.inputs.size());
    // Inputs always refer to batches created by strictly earlier events, so recursion ends.
    for (const auto& edge : rec.inputs)
    {
        const auto* child = graph.find(edge.input);
        if (!child)
            throw LedgerError{ErrorCode::UnknownBatch, "dangling lineage edge"};
        node->children.push_back({edge.drawn, build(graph, *child, cache)});
    }
    cache.emplace(slot, node);
    return node;
}
}  // namespace

std::uint64_t ProvenanceNode::rendered_size() const
{
    std::unordered_map<const ProvenanceNode*, std::uint64_t> memo;
    auto count = [&memo](auto&& self, const ProvenanceNode& n) -> std::uint64_t {
        if (const auto it = memo.find(&n); it != memo.end())
            return it->second;
        std::uint64_t total = 1;
        for (const auto& c : n.children)
            total += self(self, *c.node);
        memo.emplace(&n, total);
        return total;
    };
    return count(count, *this);
}

std::shared_ptr<const ProvenanceNode> trace_provenance(const EventLog& log, const Address& contract,
                                                       const BatchId& batch)
{
    NodeCache cache;
    return build(log.lineage(), require_record(log, contract, batch), cache);
}

std::vector<BatchRef> track_descendants(const EventLog& log, const Address& contract,
                                        const BatchId& batch)
{
    require_record(log, contract, batch);
    const auto& graph = log.lineage();

    std::unordered_set<Word32> seen;
    std::deque<Word32> frontier{pack_slot(contract, batch)};
    std::vector<const LineageRecord*> found;
    while (!frontier.empty())
    {
        const auto slot = frontier.front();
        frontier.pop_front();
        for (const auto& consumer : graph.consumers(slot))
        {
            if (!seen.insert(consumer).second)
                continue;
            found.push_back(graph.find(consumer));
            frontier.push_back(consumer);
        }
    }

    std::sort(found.begin(), found.end(), [](const LineageRecord* a, const LineageRecord* b) {
        return std::tie(a->event_index, a->ordinal) < std::tie(b->event_index, b->ordinal);
    });
    std::vector<BatchRef> out;
    out.reserve(found.size());
    for (const auto* rec : found)
        out.push_back({rec->contract, rec->batch});
    return out;
}

std::vector<LedgerEvent> custody_history(const EventLog& log, const Address& contract,
                                         const BatchId& batch)
{
    const auto& rec = require_record(log, contract, batch);

    std::vector<LedgerEvent> out;
    out.push_back(log[rec.event_index]);
    EventFilter filter;
    filter.topics[0] = address_word(contract);
    filter.topics[1] = pack_slot(contract, batch);
    filter.from_index = rec.event_index + 1;
    for (auto& e : log.query(filter))
    {
        const auto k = e.kind();
        if (k == EventKind::BatchTransferred || k == EventKind::BatchConsumed ||
            k == EventKind::BatchSplit)
            out.push_back(std::move(e));
    }
    // Also the events in which the batch was drawn into a product or merged away.
    for (const auto& consumer : log.lineage().consumers(pack_slot(contract, batch)))
    {
        const auto* c = log.lineage().find(consumer);
        if (c->kind != LineageKind::Split)
            out.push_back(log[c->event_index]);
    }
    std::sort(out.begin(), out.end(),
              [](const LedgerEvent& a, const LedgerEvent& b) { return a.index < b.index; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const LedgerEvent& a, const LedgerEvent& b) {
                              return a.index == b.index;
                          }),
              out.end());
    return out;
}

}  // namespace provchain
