// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace provchain
{
using Hash256 = std::array<std::uint8_t, 32>;

/// Incremental Keccak-256 with the original (pre-FIPS) 0x01 domain padding,
/// i.e. the hash behind the EVM's SHA3 opcode. Not SHA3-256.
class Keccak256
{
public:
    Keccak256() noexcept;

    Keccak256& update(std::span<const std::uint8_t> data) noexcept;
    Keccak256& update(std::string_view text) noexcept;

    /// Pads, squeezes, and resets the sponge for reuse.
    Hash256 finalize() noexcept;

private:
    static constexpr std::size_t rate_bytes = 136;

    void absorb(const std::uint8_t* block) noexcept;
    void absorb_block() noexcept;

    std::array<std::uint64_t, 25> state_{};
    std::array<std::uint8_t, rate_bytes> buffer_{};
    std::size_t buffered_ = 0;
};

Hash256 keccak256(std::span<const std::uint8_t> data) noexcept;
Hash256 keccak256(std::string_view text) noexcept;

}  // namespace provchain
