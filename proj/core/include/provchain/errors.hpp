// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace provchain
{
/// Rejection reasons of ledger transactions. The names are part of the wire format.
enum class ErrorCode
{
    UnknownSource,
    BadAmount,
    NotCertifier,
    UnknownContract,
    AlreadyCertified,
    NotCertified,
    NotOwner,
    ArityMismatch,
    QuantityMismatch,
    InputMismatch,
    InsufficientBalance,
    NotBatchOwner,
    IdCollision,
    BadPartition,
    BadMerge,
    Depleted,
    UnknownBatch,
    StaleTimestamp,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view text) noexcept;

class LedgerError : public std::runtime_error
{
public:
    LedgerError(ErrorCode code, const std::string& message)
      : std::runtime_error{std::string{to_string(code)} + ": " + message}, code_{code}
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace provchain
