// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/ident.hpp>
#include <provchain/keccak.hpp>

#include <algorithm>

namespace provchain
{
namespace detail
{
int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}
}  // namespace detail

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes)
    {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Word32 pack_slot(const Address& contract, const BatchId& id) noexcept
{
    Word32 word;
    auto it = std::copy(contract.bytes().begin(), contract.bytes().end(), word.bytes().begin());
    std::copy(id.bytes().begin(), id.bytes().end(), it);
    return word;
}

std::pair<Address, BatchId> unpack_slot(const Word32& word) noexcept
{
    const auto& w = word.bytes();
    Address contract;
    BatchId id;
    std::copy_n(w.begin(), Address::size, contract.bytes().begin());
    std::copy_n(w.begin() + Address::size, BatchId::size, id.bytes().begin());
    return {contract, id};
}

Word32 pack_slot(std::span<const std::uint8_t> contract, std::span<const std::uint8_t> id)
{
    return pack_slot(Address::from_span(contract), BatchId::from_span(id));
}

std::pair<Address, BatchId> unpack_slot(std::span<const std::uint8_t> word)
{
    return unpack_slot(Word32::from_span(word));
}

Word32 address_word(const Address& address) noexcept
{
    Word32 word;
    std::copy(address.bytes().begin(), address.bytes().end(),
              word.bytes().begin() + (Word32::size - Address::size));
    return word;
}

void append_be64(std::vector<std::uint8_t>& out, std::uint64_t value)
{
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(value >> shift));
}

std::vector<std::uint8_t> encode_batch_preimage(std::span<const ConsumedInput> inputs,
                                                const Address& sender, std::uint64_t timestamp)
{
    std::vector<std::uint8_t> out;
    out.reserve(inputs.size() * 40 + Address::size + 8);
    for (const auto& input : inputs)
    {
        const auto slot = pack_slot(input.contract, input.batch);
        out.insert(out.end(), slot.bytes().begin(), slot.bytes().end());
        append_be64(out, input.amount);
    }
    out.insert(out.end(), sender.bytes().begin(), sender.bytes().end());
    append_be64(out, timestamp);
    return out;
}

BatchId derive_batch_id(std::span<const ConsumedInput> inputs, const Address& sender,
                        std::uint64_t timestamp)
{
    const auto digest = keccak256(encode_batch_preimage(inputs, sender, timestamp));
    return BatchId::from_span(std::span{digest}.first<BatchId::size>());
}

}  // namespace provchain
