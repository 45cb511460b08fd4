// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace provchain
{
/// Raised when raw bytes or hex text do not have the exact width of the target type.
class LengthError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Fixed-width opaque byte string; the tag keeps addresses, ids and words apart.
template <std::size_t N, class Tag>
class FixedBytes
{
public:
    static constexpr std::size_t size = N;

    constexpr FixedBytes() noexcept = default;
    constexpr explicit FixedBytes(const std::array<std::uint8_t, N>& bytes) noexcept : bytes_{bytes} {}

    static FixedBytes from_span(std::span<const std::uint8_t> bytes)
    {
        if (bytes.size() != N)
            throw LengthError{"expected " + std::to_string(N) + " bytes, got " +
                              std::to_string(bytes.size())};
        FixedBytes out;
        std::copy(bytes.begin(), bytes.end(), out.bytes_.begin());
        return out;
    }

    /// Accepts exactly 2N hex digits, case-insensitive, optional "0x" prefix.
    static FixedBytes from_hex(std::string_view text);

    std::string hex() const { return to_hex(bytes_); }

    constexpr const std::array<std::uint8_t, N>& bytes() const noexcept { return bytes_; }
    constexpr std::array<std::uint8_t, N>& bytes() noexcept { return bytes_; }
    constexpr std::span<const std::uint8_t, N> span() const noexcept { return bytes_; }

    constexpr bool is_zero() const noexcept
    {
        for (auto b : bytes_)
            if (b != 0)
                return false;
        return true;
    }

    friend constexpr auto operator<=>(const FixedBytes&, const FixedBytes&) = default;

private:
    std::array<std::uint8_t, N> bytes_{};
};

using Address = FixedBytes<20, struct AddressTag>;
using BatchId = FixedBytes<12, struct BatchIdTag>;
/// One 32-byte EVM storage word.
using Word32 = FixedBytes<32, struct WordTag>;

namespace detail
{
int hex_value(char c) noexcept;
}

template <std::size_t N, class Tag>
FixedBytes<N, Tag> FixedBytes<N, Tag>::from_hex(std::string_view text)
{
    if (text.starts_with("0x") || text.starts_with("0X"))
        text.remove_prefix(2);
    if (text.size() != 2 * N)
        throw LengthError{"expected " + std::to_string(2 * N) + " hex digits, got " +
                          std::to_string(text.size())};
    FixedBytes out;
    for (std::size_t i = 0; i < N; ++i)
    {
        const int hi = detail::hex_value(text[2 * i]);
        const int lo = detail::hex_value(text[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument{"invalid hex digit in '" + std::string{text} + "'"};
        out.bytes_[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

/// A quantity drawn from (or credited to) one batch of one token contract.
struct ConsumedInput
{
    Address contract;
    BatchId batch;
    std::uint64_t amount = 0;

    friend bool operator==(const ConsumedInput&, const ConsumedInput&) = default;
};

/// contract (20 bytes) followed by batch id (12 bytes).
Word32 pack_slot(const Address& contract, const BatchId& id) noexcept;
std::pair<Address, BatchId> unpack_slot(const Word32& word) noexcept;

/// Raw-byte variants; throw LengthError unless the inputs are exactly 20 + 12 or 32 bytes.
Word32 pack_slot(std::span<const std::uint8_t> contract, std::span<const std::uint8_t> id);
std::pair<Address, BatchId> unpack_slot(std::span<const std::uint8_t> word);

/// Address left-padded to a full word, as the EVM stores it in a log topic.
Word32 address_word(const Address& address) noexcept;

/// Canonical pre-image for batch identifiers: for each input pack_slot(contract, batch) then the
/// amount as 8 bytes big-endian; then the 20-byte sender; then the timestamp as 8 bytes big-endian.
std::vector<std::uint8_t> encode_batch_preimage(std::span<const ConsumedInput> inputs,
                                                const Address& sender, std::uint64_t timestamp);

/// First 12 bytes of Keccak-256 over the canonical pre-image.
BatchId derive_batch_id(std::span<const ConsumedInput> inputs, const Address& sender,
                        std::uint64_t timestamp);

void append_be64(std::vector<std::uint8_t>& out, std::uint64_t value);

}  // namespace provchain

template <std::size_t N, class Tag>
struct std::hash<provchain::FixedBytes<N, Tag>>
{
    std::size_t operator()(const provchain::FixedBytes<N, Tag>& v) const noexcept
    {
        // FNV-1a; the contents are usually hash outputs already.
        std::size_t h = 1469598103934665603ULL;
        for (auto b : v.bytes())
            h = (h ^ b) * 1099511628211ULL;
        return h;
    }
};
