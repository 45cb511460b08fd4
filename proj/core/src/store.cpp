// provchain: supply chain traceability ledger
// Copyright 2026 The provchain Authors.
// Licensed under the Apache License, Version 2.0.

#include <provchain/json_codec.hpp>
#include <provchain/store.hpp>

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace provchain
{
namespace
{
constexpr std::string_view state_tag = "provchain/state/v1";

class Writer
{
public:
    void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u64(std::uint64_t v) { append_be64(out_, v); }
    void text(std::string_view s)
    {
        u64(s.size());
        out_.insert(out_.end(), s.begin(), s.end());
    }
    template <std::size_t N, class Tag>
    void fixed(const FixedBytes<N, Tag>& v)
    {
        bytes(v.span());
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

void write_lineage(Writer& w, const Lineage& lineage)
{
    w.u8(static_cast<std::uint8_t>(lineage.index()));
    if (const auto* c = std::get_if<lineage::Created>(&lineage))
    {
        w.u64(c->inputs.size());
        for (const auto& in : c->inputs)
        {
            w.fixed(pack_slot(in.contract, in.batch));
            w.u64(in.amount);
        }
    }
    else if (const auto* s = std::get_if<lineage::SplitFrom>(&lineage))
    {
        w.fixed(s->parent);
    }
    else if (const auto* m = std::get_if<lineage::MergedFrom>(&lineage))
    {
        w.u64(m->parents.size());
        for (const auto& p : m->parents)
            w.fixed(p);
    }
}

nlohmann::json encode_outcome(const TxOutcome& o)
{
    if (o.accepted)
        return {{"status", "accepted"}, {"ids", o.ids}};
    return {{"status", "rejected"}, {"code", to_string(*o.error)}};
}
}  // namespace

std::vector<std::uint8_t> canonical_state(const Ledger& ledger)
{
    Writer w;
    w.bytes(std::span{reinterpret_cast<const std::uint8_t*>(state_tag.data()), state_tag.size()});
    w.u64(ledger.height());

    w.u64(ledger.tokens().size());
    for (const auto& [address, t] : ledger.tokens())
    {
        w.fixed(address);
        w.fixed(t.owner);
        w.text(t.name);
        w.text(t.unit_label);
        w.u64(t.recipe.size());
        for (const auto& r : t.recipe)
        {
            w.u8(static_cast<std::uint8_t>(r.kind));
            w.fixed(r.source);
            w.u64(r.amount_per_unit);
        }
        w.u64(t.minted);
        w.u64(t.burned);
        w.u64(t.batches.size());
        for (const auto& [id, b] : t.batches)
        {
            w.fixed(id);
            w.u64(b.amount);
            w.fixed(b.owner);
            w.u64(b.created_at.tx_index);
            w.u64(b.created_at.seconds);
            write_lineage(w, b.lineage);
        }
    }

    w.u64(ledger.certificates().size());
    for (const auto& [address, c] : ledger.certificates())
    {
        w.fixed(address);
        w.fixed(c.certifier);
        w.text(c.name);
        w.u64(c.history.size());
        for (const auto& h : c.history)
        {
            w.fixed(h.token);
            w.u8(static_cast<std::uint8_t>(h.status));
            w.u64(h.tx_index);
        }
    }
    return w.take();
}

StateDigest state_digest(const Ledger& ledger)
{
    return keccak256(canonical_state(ledger));
}

std::string TransactionRecord::to_line() const
{
    const nlohmann::json j = {
        {"index", index},     {"timestamp", timestamp},          {"caller", caller.hex()},
        {"op", op},           {"params", params},                {"outcome", encode_outcome(outcome)},
        {"digest", to_hex(digest)},
    };
    return j.dump();
}

TransactionRecord TransactionRecord::from_line(std::string_view line, std::uint64_t line_number)
{
    const auto malformed = [&](const std::string& why) {
        return ReplayError{ReplayError::Kind::MalformedRecord, line_number,
                           "line " + std::to_string(line_number + 1) + ": " + why};
    };
    try
    {
        const auto j = nlohmann::json::parse(line);
        TransactionRecord r;
        r.index = codec::u64(j, "index");
        r.timestamp = codec::u64(j, "timestamp");
        r.caller = codec::address(j, "caller");
        r.op = codec::text(j, "op");
        if (!is_operation(r.op))
            throw malformed("unknown operation '" + r.op + "'");
        r.params = codec::field(j, "params");
        if (!r.params.is_object())
            throw malformed("params must be an object");

        const auto& o = codec::field(j, "outcome");
        const auto status = codec::text(o, "status");
        if (status == "accepted")
        {
            r.outcome.accepted = true;
            for (const auto& id : codec::field(o, "ids"))
                r.outcome.ids.push_back(id.get<std::string>());
        }
        else if (status == "rejected")
        {
            r.outcome.error = parse_error_code(codec::text(o, "code"));
            if (!r.outcome.error)
                throw malformed("unknown error code");
        }
        else
        {
            throw malformed("unknown outcome status '" + status + "'");
        }

        const auto digest_hex = codec::text(j, "digest");
        r.digest = Word32::from_hex(digest_hex).bytes();
        return r;
    }
    catch (const ReplayError&)
    {
        throw;
    }
    catch (const std::exception& e)
    {
        throw malformed(e.what());
    }
}

ReplayError::ReplayError(Kind kind, std::uint64_t index, const std::string& message)
  : std::runtime_error{message}, kind_{kind}, index_{index}
{}

LoadedLog load_log(const std::filesystem::path& path)
{
    LoadedLog out;
    std::ifstream in{path, std::ios::binary};
    if (!in)
        return out;
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto content = buffer.str();

    std::size_t pos = 0;
    std::uint64_t line_number = 0;
    while (pos < content.size())
    {
        const auto nl = content.find('\n', pos);
        if (nl == std::string::npos)
        {
            out.torn_bytes = content.size() - pos;
            break;
        }
        const std::string_view line{content.data() + pos, nl - pos};
        pos = nl + 1;
        auto record = TransactionRecord::from_line(line, line_number);
        if (record.index != out.records.size())
            throw ReplayError{ReplayError::Kind::MalformedRecord, line_number,
                              "expected index " + std::to_string(out.records.size()) + ", found " +
                                  std::to_string(record.index)};
        out.records.push_back(std::move(record));
        ++line_number;
    }
    return out;
}

TxLog::TxLog(const std::filesystem::path& path) : path_{path}
{
    const auto loaded = load_log(path);
    next_index_ = loaded.records.size();

    fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0)
        throw StorageError{"cannot open " + path.string() + ": " + std::strerror(errno)};
    if (loaded.torn_bytes > 0)
    {
        const auto size = std::filesystem::file_size(path);
        if (::ftruncate(fd_, static_cast<off_t>(size - loaded.torn_bytes)) != 0)
            throw StorageError{"cannot truncate torn record in " + path.string()};
    }
}

TxLog::~TxLog()
{
    if (fd_ >= 0)
        ::close(fd_);
}

TxLog::TxLog(TxLog&& other) noexcept
  : path_{std::move(other.path_)}, fd_{std::exchange(other.fd_, -1)}, next_index_{other.next_index_}
{}

TxLog& TxLog::operator=(TxLog&& other) noexcept
{
    if (this != &other)
    {
        if (fd_ >= 0)
            ::close(fd_);
        path_ = std::move(other.path_);
        fd_ = std::exchange(other.fd_, -1);
        next_index_ = other.next_index_;
    }
    return *this;
}

void TxLog::persist(const TransactionRecord& record)
{
    if (record.index != next_index_)
        throw StorageError{"record index " + std::to_string(record.index) + ", expected " +
                           std::to_string(next_index_)};
    const auto line = record.to_line() + "\n";
    std::size_t written = 0;
    while (written < line.size())
    {
        const auto n = ::write(fd_, line.data() + written, line.size() - written);
        if (n < 0)
        {
            if (errno == EINTR)
                continue;
            throw StorageError{"write to " + path_.string() + " failed: " + std::strerror(errno)};
        }
        written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd_) != 0)
        throw StorageError{"fsync of " + path_.string() + " failed: " + std::strerror(errno)};
    ++next_index_;
}

ReplayResult replay(std::span<const TransactionRecord> records, GasProfile gas)
{
    ReplayResult out{Ledger{std::move(gas)}, {}, {}};
    out.digest = state_digest(out.ledger);
    out.digests.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
    {
        const auto& r = records[i];
        if (r.index != i)
            throw ReplayError{ReplayError::Kind::MalformedRecord, r.index,
                              "expected index " + std::to_string(i)};
        TxResult result;
        try
        {
            result = execute(out.ledger, r.request());
        }
        catch (const RequestError& e)
        {
            throw ReplayError{ReplayError::Kind::MalformedRecord, r.index, e.what()};
        }
        if (result.outcome != r.outcome)
            throw ReplayError{ReplayError::Kind::OutcomeMismatch, r.index,
                              "record " + std::to_string(r.index) + " replays to a different outcome"};
        out.digest = state_digest(out.ledger);
        if (out.digest != r.digest)
            throw ReplayError{ReplayError::Kind::DigestMismatch, r.index,
                              "record " + std::to_string(r.index) + ": digest " + to_hex(out.digest) +
                                  " != logged " + to_hex(r.digest)};
        out.digests.push_back(out.digest);
    }
    return out;
}

ReplayResult replay_file(const std::filesystem::path& path, GasProfile gas)
{
    return replay(load_log(path).records, std::move(gas));
}

}  // namespace provchain
