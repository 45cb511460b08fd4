// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/errors.hpp>

#include <array>
#include <utility>

namespace provchain
{
namespace
{
constexpr std::array<std::pair<ErrorCode, std::string_view>, 18> names = {{
    {ErrorCode::UnknownSource, "UnknownSource"},
    {ErrorCode::BadAmount, "BadAmount"},
    {ErrorCode::NotCertifier, "NotCertifier"},
    {ErrorCode::UnknownContract, "UnknownContract"},
    {ErrorCode::AlreadyCertified, "AlreadyCertified"},
    {ErrorCode::NotCertified, "NotCertified"},
    {ErrorCode::NotOwner, "NotOwner"},
    {ErrorCode::ArityMismatch, "ArityMismatch"},
    {ErrorCode::QuantityMismatch, "QuantityMismatch"},
    {ErrorCode::InputMismatch, "InputMismatch"},
    {ErrorCode::InsufficientBalance, "InsufficientBalance"},
    {ErrorCode::NotBatchOwner, "NotBatchOwner"},
    {ErrorCode::IdCollision, "IdCollision"},
    {ErrorCode::BadPartition, "BadPartition"},
    {ErrorCode::BadMerge, "BadMerge"},
    {ErrorCode::Depleted, "Depleted"},
    {ErrorCode::UnknownBatch, "UnknownBatch"},
    {ErrorCode::StaleTimestamp, "StaleTimestamp"},
}};
}  // namespace

std::string_view to_string(ErrorCode code) noexcept
{
    for (const auto& [c, name] : names)
        if (c == code)
            return name;
    return "Unknown";
}

std::optional<ErrorCode> parse_error_code(std::string_view text) noexcept
{
    for (const auto& [c, name] : names)
        if (name == text)
            return c;
    return std::nullopt;
}

}  // namespace provchain
