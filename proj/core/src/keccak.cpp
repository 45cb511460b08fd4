// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/keccak.hpp>

#include <algorithm>
#include <bit>

namespace provchain
{
namespace
{
constexpr std::array<std::uint64_t, 24> round_constants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rho offsets and pi lane order, walked along the pi permutation cycle starting at lane 1.
constexpr std::array<int, 24> rho_offsets = {
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44,
};
constexpr std::array<int, 24> pi_lanes = {
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1,
};

void keccak_f1600(std::array<std::uint64_t, 25>& state) noexcept
{
    auto* a = state.data();
    for (const auto rc : round_constants)
    {
        // theta
        std::uint64_t c[5];
#pragma GCC unroll 5
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
#pragma GCC unroll 5
        for (int x = 0; x < 5; ++x)
        {
            const auto d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
#pragma GCC unroll 5
            for (int y = 0; y < 25; y += 5)
                a[y + x] ^= d;
        }

        // rho + pi
        auto carry = a[1];
#pragma GCC unroll 24
        for (std::size_t i = 0; i < 24; ++i)
        {
            const auto lane = pi_lanes[i];
            const auto next = a[lane];
            a[lane] = std::rotl(carry, rho_offsets[i]);
            carry = next;
        }

        // chi
#pragma GCC unroll 5
        for (int y = 0; y < 25; y += 5)
        {
            const auto r0 = a[y], r1 = a[y + 1], r2 = a[y + 2], r3 = a[y + 3], r4 = a[y + 4];
            a[y] = r0 ^ (~r1 & r2);
            a[y + 1] = r1 ^ (~r2 & r3);
            a[y + 2] = r2 ^ (~r3 & r4);
            a[y + 3] = r3 ^ (~r4 & r0);
            a[y + 4] = r4 ^ (~r0 & r1);
        }

        // iota
        a[0] ^= rc;
    }
}

std::uint64_t load_le64(const std::uint8_t* p) noexcept
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}
}  // namespace

Keccak256::Keccak256() noexcept = default;

void Keccak256::absorb(const std::uint8_t* block) noexcept
{
    for (std::size_t i = 0; i < rate_bytes / 8; ++i)
        state_[i] ^= load_le64(block + i * 8);
    keccak_f1600(state_);
}

void Keccak256::absorb_block() noexcept
{
    absorb(buffer_.data());
    buffered_ = 0;
}

Keccak256& Keccak256::update(std::span<const std::uint8_t> data) noexcept
{
    auto* p = data.data();
    auto left = data.size();
    if (buffered_ > 0)
    {
        const auto take = std::min(left, rate_bytes - buffered_);
        std::copy_n(p, take, buffer_.begin() + static_cast<std::ptrdiff_t>(buffered_));
        buffered_ += take;
        p += take;
        left -= take;
        if (buffered_ < rate_bytes)
            return *this;
        absorb_block();
    }
    for (; left >= rate_bytes; p += rate_bytes, left -= rate_bytes)
        absorb(p);
    std::copy_n(p, left, buffer_.begin());
    buffered_ = left;
    return *this;
}

Keccak256& Keccak256::update(std::string_view text) noexcept
{
    return update(std::span{reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

Hash256 Keccak256::finalize() noexcept
{
    std::fill(buffer_.begin() + static_cast<std::ptrdiff_t>(buffered_), buffer_.end(), 0);
    buffer_[buffered_] ^= 0x01;
    buffer_[rate_bytes - 1] ^= 0x80;
    absorb_block();

    Hash256 out{};
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(state_[i / 8] >> (8 * (i % 8)));

    state_.fill(0);
    buffered_ = 0;
    return out;
}

Hash256 keccak256(std::span<const std::uint8_t> data) noexcept
{
    return Keccak256{}.update(data).finalize();
}

Hash256 keccak256(std::string_view text) noexcept
{
    return Keccak256{}.update(text).finalize();
}

}  // namespace provchain
