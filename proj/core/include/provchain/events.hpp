// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/ident.hpp>
#include <provchain/types.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace provchain
{
enum class EventKind
{
    ContractDeployed,
    CertificateGranted,
    CertificateRevoked,
    BatchCreated,
    BatchSplit,
    BatchMerged,
    BatchTransferred,
    BatchConsumed,
};

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;

namespace event
{
struct ContractDeployed
{
    Address contract;
    Address owner;
    ContractKind kind = ContractKind::Token;
    std::string name;
    std::string unit_label;
    std::vector<RecipeInput> recipe;
    friend bool operator==(const ContractDeployed&, const ContractDeployed&) = default;
};

struct CertificateGranted
{
    Address certificate;
    Address token;
    friend bool operator==(const CertificateGranted&, const CertificateGranted&) = default;
};

struct CertificateRevoked
{
    Address certificate;
    Address token;
    friend bool operator==(const CertificateRevoked&, const CertificateRevoked&) = default;
};

struct BatchCreated
{
    Address contract;
    BatchId batch;
    Address owner;
    std::uint64_t amount = 0;
    std::vector<ConsumedInput> inputs;
    friend bool operator==(const BatchCreated&, const BatchCreated&) = default;
};

/// The parent is fully depleted into the children.
struct BatchSplit
{
    Address contract;
    BatchId parent;
    Address owner;
    std::vector<BatchPart> children;
    friend bool operator==(const BatchSplit&, const BatchSplit&) = default;
};

/// Parents carry the amount each contributed (their full remaining amount).
struct BatchMerged
{
    Address contract;
    BatchId batch;
    Address owner;
    std::vector<BatchPart> parents;
    friend bool operator==(const BatchMerged&, const BatchMerged&) = default;
};

struct BatchTransferred
{
    Address contract;
    BatchId batch;
    Address from;
    Address to;
    friend bool operator==(const BatchTransferred&, const BatchTransferred&) = default;
};

struct BatchConsumed
{
    Address contract;
    BatchId batch;
    Address owner;
    std::uint64_t amount = 0;
    friend bool operator==(const BatchConsumed&, const BatchConsumed&) = default;
};
}  // namespace event

using EventPayload =
    std::variant<event::ContractDeployed, event::CertificateGranted, event::CertificateRevoked,
                 event::BatchCreated, event::BatchSplit, event::BatchMerged,
                 event::BatchTransferred, event::BatchConsumed>;

inline constexpr std::size_t max_topics = 4;

struct LedgerEvent
{
    std::uint64_t index = 0;
    std::uint64_t timestamp = 0;
    Address caller;
    EventPayload payload;

    EventKind kind() const noexcept { return static_cast<EventKind>(payload.index()); }

    /// Filterable values, positionally: [0] emitting contract, [1] batch slot (or the certified
    /// token for certificate events, the owner for deployments), [2] owner or recipient,
    /// [3] sender of a transfer. Addresses are left-padded words.
    std::vector<Word32> topics() const;

    friend bool operator==(const LedgerEvent&, const LedgerEvent&) = default;
};

/// Positional topic match, absent entries are wildcards. The index range is [from, to).
struct EventFilter
{
    std::optional<EventKind> kind;
    std::array<std::optional<Word32>, max_topics> topics{};
    std::uint64_t from_index = 0;
    std::optional<std::uint64_t> to_index;

    bool matches(const LedgerEvent& e) const;
};

class OutOfOrderError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Edge from a batch to one batch it was made of.
struct LineageEdge
{
    Word32 input;
    std::uint64_t drawn = 0;
};

enum class LineageKind
{
    Created,
    Split,
    Merged,
};

/// Per-batch composition record distilled from the event stream.
struct LineageRecord
{
    Address contract;
    BatchId batch;
    std::uint64_t amount_at_creation = 0;
    std::uint64_t event_index = 0;
    /// Position among the batches created by the same event (split children).
    std::uint32_t ordinal = 0;
    LineageKind kind = LineageKind::Created;
    std::vector<LineageEdge> inputs;
};

/// Composition graph keyed by pack_slot(contract, batch), with reverse edges for tracking.
class LineageGraph
{
public:
    void record(const LedgerEvent& e);

    const LineageRecord* find(const Word32& slot) const;
    /// Batches that list `slot` among their inputs, in creation order.
    const std::vector<Word32>& consumers(const Word32& slot) const;
    std::size_t size() const noexcept { return records_.size(); }

private:
    void add(LineageRecord rec);

    std::unordered_map<Word32, LineageRecord> records_;
    std::unordered_map<Word32, std::vector<Word32>> consumers_;
};

/// Append-only event log with topic and lineage indices.
class EventLog
{
public:
    /// Returns the index of the appended event. Throws OutOfOrderError unless
    /// event.index == size().
    std::uint64_t append(LedgerEvent event);

    std::size_t size() const noexcept { return events_.size(); }
    bool empty() const noexcept { return events_.empty(); }
    const LedgerEvent& operator[](std::size_t i) const { return events_.at(i); }
    const std::vector<LedgerEvent>& all() const noexcept { return events_; }

    /// Matching events in index order.
    std::vector<LedgerEvent> query(const EventFilter& filter) const;

    const LineageGraph& lineage() const noexcept { return lineage_; }

private:
    std::vector<LedgerEvent> events_;
    std::unordered_map<Word32, std::vector<std::uint64_t>> by_topic_;
    LineageGraph lineage_;
};

}  // namespace provchain
