// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <provchain/commands.hpp>
#include <provchain/keccak.hpp>
#include <provchain/ledger.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace provchain
{
using StateDigest = Hash256;

/// Canonical byte serialization of all contracts, batches and certificates (address order),
/// prefixed by the number of accepted transactions.
std::vector<std::uint8_t> canonical_state(const Ledger& ledger);

/// Keccak-256 of canonical_state().
StateDigest state_digest(const Ledger& ledger);

/// One line of the transaction log. Rejected transactions are logged too.
struct TransactionRecord
{
    std::uint64_t index = 0;
    std::uint64_t timestamp = 0;
    Address caller;
    std::string op;
    nlohmann::json params = nlohmann::json::object();
    TxOutcome outcome;
    /// State digest after the transaction.
    StateDigest digest{};

    TxRequest request() const { return {op, caller, timestamp, params}; }

    /// Single-line JSON with sorted keys.
    std::string to_line() const;
    /// Throws ReplayError(MalformedRecord).
    static TransactionRecord from_line(std::string_view line, std::uint64_t line_number);
};

class ReplayError : public std::runtime_error
{
public:
    enum class Kind
    {
        MalformedRecord,
        DigestMismatch,
        OutcomeMismatch,
    };

    ReplayError(Kind kind, std::uint64_t index, const std::string& message);

    Kind kind() const noexcept { return kind_; }
    std::uint64_t index() const noexcept { return index_; }

private:
    Kind kind_;
    std::uint64_t index_;
};

class StorageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct LoadedLog
{
    std::vector<TransactionRecord> records;
    /// Bytes of an unterminated final line, which was never acknowledged.
    std::size_t torn_bytes = 0;
};

/// Parses a log file; a missing file is an empty log. Indices must be contiguous from 0.
LoadedLog load_log(const std::filesystem::path& path);

/// Append-only JSON-lines writer. Each record is flushed and fsync'ed before persist() returns.
class TxLog
{
public:
    /// Opens (creating if needed) and truncates a torn final line.
    explicit TxLog(const std::filesystem::path& path);
    ~TxLog();
    TxLog(const TxLog&) = delete;
    TxLog& operator=(const TxLog&) = delete;
    TxLog(TxLog&& other) noexcept;
    TxLog& operator=(TxLog&& other) noexcept;

    /// Throws StorageError if the index is not the next expected one or the write fails.
    void persist(const TransactionRecord& record);

    std::uint64_t next_index() const noexcept { return next_index_; }
    void set_next_index(std::uint64_t next) noexcept { next_index_ = next; }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    int fd_ = -1;
    std::uint64_t next_index_ = 0;
};

struct ReplayResult
{
    Ledger ledger;
    StateDigest digest{};
    /// Digest after each record, index by index.
    std::vector<StateDigest> digests;
};

/// Re-executes the records through the ledger, checking each outcome and post-state digest.
ReplayResult replay(std::span<const TransactionRecord> records, GasProfile gas = {});
ReplayResult replay_file(const std::filesystem::path& path, GasProfile gas = {});

}  // namespace provchain
