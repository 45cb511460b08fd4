// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/errors.hpp>
#include <provchain/ledger.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace provchain
{
/// Operation names as they appear in the transaction log and the API.
namespace op
{
inline constexpr std::string_view deploy_token = "deploy_token_contract";
inline constexpr std::string_view deploy_certificate = "deploy_certificate_contract";
inline constexpr std::string_view certify = "certify";
inline constexpr std::string_view revoke = "revoke";
inline constexpr std::string_view add_batch = "add_batch";
inline constexpr std::string_view split_batch = "split_batch";
inline constexpr std::string_view merge_batch = "merge_batch";
inline constexpr std::string_view transfer_batch = "transfer_batch";
inline constexpr std::string_view consume_batch = "consume_batch";
}  // namespace op

std::span<const std::string_view> operation_names() noexcept;
bool is_operation(std::string_view name) noexcept;

/// One state-changing request in canonical form. `params` holds only the operation's own
/// fields (never caller or timestamp).
struct TxRequest
{
    std::string op;
    Address caller;
    std::uint64_t timestamp = 0;
    nlohmann::json params = nlohmann::json::object();
};

struct TxOutcome
{
    bool accepted = false;
    /// Contract addresses or batch ids produced, as hex.
    std::vector<std::string> ids;
    std::optional<ErrorCode> error;

    friend bool operator==(const TxOutcome&, const TxOutcome&) = default;
};

struct TxResult
{
    TxOutcome outcome;
    std::optional<gas::GasReceipt> gas;
    std::string message;
};

/// Applies one request to the ledger. Ledger rejections become a rejected outcome; malformed
/// parameters throw RequestError before anything is attempted.
TxResult execute(Ledger& ledger, const TxRequest& request);

/// The operation parameters of an API body in canonical form: caller and timestamp removed,
/// hex lowercased without prefix, optional fields filled with their defaults. Unknown fields
/// and malformed values throw RequestError.
nlohmann::json canonical_params(std::string_view op, const nlohmann::json& body);

}  // namespace provchain
