// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/events.hpp>

#include <algorithm>
#include <array>

namespace provchain
{
namespace
{
constexpr std::array<std::string_view, 8> kind_names = {
    "ContractDeployed", "CertificateGranted", "CertificateRevoked", "BatchCreated",
    "BatchSplit",       "BatchMerged",        "BatchTransferred",   "BatchConsumed",
};

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

const std::vector<Word32> no_consumers;
}  // namespace

std::string_view to_string(EventKind kind) noexcept
{
    return kind_names.at(static_cast<std::size_t>(kind));
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept
{
    for (std::size_t i = 0; i < kind_names.size(); ++i)
        if (kind_names[i] == text)
            return static_cast<EventKind>(i);
    return std::nullopt;
}

std::vector<Word32> LedgerEvent::topics() const
{
    return std::visit(
        overloaded{
            [](const event::ContractDeployed& e) -> std::vector<Word32> {
                return {address_word(e.contract), address_word(e.owner)};
            },
            [](const event::CertificateGranted& e) -> std::vector<Word32> {
                return {address_word(e.certificate), address_word(e.token)};
            },
            [](const event::CertificateRevoked& e) -> std::vector<Word32> {
                return {address_word(e.certificate), address_word(e.token)};
            },
            [](const event::BatchCreated& e) -> std::vector<Word32> {
                return {address_word(e.contract), pack_slot(e.contract, e.batch),
                        address_word(e.owner)};
            },
            [](const event::BatchSplit& e) -> std::vector<Word32> {
                return {address_word(e.contract), pack_slot(e.contract, e.parent),
                        address_word(e.owner)};
            },
            [](const event::BatchMerged& e) -> std::vector<Word32> {
                return {address_word(e.contract), pack_slot(e.contract, e.batch),
                        address_word(e.owner)};
            },
            [](const event::BatchTransferred& e) -> std::vector<Word32> {
                return {address_word(e.contract), pack_slot(e.contract, e.batch),
                        address_word(e.to), address_word(e.from)};
            },
            [](const event::BatchConsumed& e) -> std::vector<Word32> {
                return {address_word(e.contract), pack_slot(e.contract, e.batch),
                        address_word(e.owner)};
            },
        },
        payload);
}

bool EventFilter::matches(const LedgerEvent& e) const
{
    if (e.index < from_index || (to_index && e.index >= *to_index))
        return false;
    if (kind && e.kind() != *kind)
        return false;
    const auto t = e.topics();
    for (std::size_t i = 0; i < max_topics; ++i)
    {
        if (!topics[i])
            continue;
        if (i >= t.size() || t[i] != *topics[i])
            return false;
    }
    return true;
}

void LineageGraph::add(LineageRecord rec)
{
    const auto slot = pack_slot(rec.contract, rec.batch);
    for (const auto& edge : rec.inputs)
        consumers_[edge.input].push_back(slot);
    records_.insert_or_assign(slot, std::move(rec));
}

void LineageGraph::record(const LedgerEvent& e)
{
    if (const auto* created = std::get_if<event::BatchCreated>(&e.payload))
    {
        LineageRecord rec{created->contract, created->batch, created->amount, e.index, 0,
                          LineageKind::Created, {}};
        for (const auto& in : created->inputs)
            rec.inputs.push_back({pack_slot(in.contract, in.batch), in.amount});
        add(std::move(rec));
    }
    else if (const auto* split = std::get_if<event::BatchSplit>(&e.payload))
    {
        const auto parent = pack_slot(split->contract, split->parent);
        std::uint32_t ordinal = 0;
        for (const auto& child : split->children)
        {
            add({split->contract, child.batch, child.amount, e.index, ordinal++,
                 LineageKind::Split, {{parent, child.amount}}});
        }
    }
    else if (const auto* merged = std::get_if<event::BatchMerged>(&e.payload))
    {
        LineageRecord rec{merged->contract, merged->batch, 0, e.index, 0, LineageKind::Merged, {}};
        for (const auto& p : merged->parents)
        {
            rec.amount_at_creation += p.amount;
            rec.inputs.push_back({pack_slot(merged->contract, p.batch), p.amount});
        }
        add(std::move(rec));
    }
}

const LineageRecord* LineageGraph::find(const Word32& slot) const
{
    const auto it = records_.find(slot);
    return it == records_.end() ? nullptr : &it->second;
}

const std::vector<Word32>& LineageGraph::consumers(const Word32& slot) const
{
    const auto it = consumers_.find(slot);
    return it == consumers_.end() ? no_consumers : it->second;
}

std::uint64_t EventLog::append(LedgerEvent event)
{
    if (event.index != events_.size())
        throw OutOfOrderError{"event index " + std::to_string(event.index) + " but log holds " +
                              std::to_string(events_.size()) + " events"};

    const auto t = event.topics();
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        auto& postings = by_topic_[t[i]];
        // A value may occupy several positions of one event; index it once.
        if (postings.empty() || postings.back() != event.index)
            postings.push_back(event.index);
    }
    lineage_.record(event);
    events_.push_back(std::move(event));
    return events_.back().index;
}

std::vector<LedgerEvent> EventLog::query(const EventFilter& filter) const
{
    // Narrow by the rarest requested topic, then verify positions with the full predicate.
    const std::vector<std::uint64_t>* candidates = nullptr;
    for (const auto& topic : filter.topics)
    {
        if (!topic)
            continue;
        const auto it = by_topic_.find(*topic);
        if (it == by_topic_.end())
            return {};
        if (!candidates || it->second.size() < candidates->size())
            candidates = &it->second;
    }

    std::vector<LedgerEvent> out;
    if (candidates)
    {
        auto first = std::lower_bound(candidates->begin(), candidates->end(), filter.from_index);
        for (auto it = first; it != candidates->end(); ++it)
        {
            if (filter.to_index && *it >= *filter.to_index)
                break;
            if (filter.matches(events_[*it]))
                out.push_back(events_[*it]);
        }
        return out;
    }

    const auto end = std::min<std::uint64_t>(filter.to_index.value_or(events_.size()), events_.size());
    for (auto i = filter.from_index; i < end; ++i)
        if (filter.matches(events_[i]))
            out.push_back(events_[i]);
    return out;
}

}  // namespace provchain
