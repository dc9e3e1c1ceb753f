#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperkb/expressivity.hpp"
#include "hyperkb/statement.hpp"

namespace hyperkb {

using Timestamp = std::chrono::time_point<std::chrono::system_clock, std::chrono::milliseconds>;

struct StoreRecord {
    Statement statement;
    std::uint64_t version;
    Timestamp updated_at;
};

struct StatementSummary {
    std::string id;
    std::string name;
    std::size_t parameter_count;
    BigInt z;
    BigInt t;
    std::uint64_t version;
};

enum class StoreErrc { not_found, version_conflict, validation_failed, io };

std::string_view to_string(StoreErrc code);

class StoreError : public std::runtime_error {
public:
    StoreError(StoreErrc code, const std::string& what, std::optional<ValidationReport> report = std::nullopt)
        : std::runtime_error(what), code_(code), report_(std::move(report)) {}

    StoreErrc code() const { return code_; }
    const std::optional<ValidationReport>& report() const { return report_; }

private:
    StoreErrc code_;
    std::optional<ValidationReport> report_;
};

/// ISO-8601 UTC with milliseconds, e.g. 2026-10-19T08:30:00.125Z.
std::string format_timestamp(Timestamp t);
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Directory-backed statement store: one `<id>.json` document per statement
/// plus `index.json` holding versions and timestamps. The directory is created
/// if missing and fully loaded on construction.
///
/// Reads share a lock and hand out immutable records. Writes are serialized.
class StatementStore {
public:
    explicit StatementStore(std::filesystem::path directory);

    StatementStore(const StatementStore&) = delete;
    StatementStore& operator=(const StatementStore&) = delete;

    /// Creates or replaces a statement. `expected_version` enables optimistic
    /// concurrency: the current version must equal it, with 0 meaning the
    /// statement must not exist yet.
    StoreRecord save(const StatementDefinition& definition, std::optional<std::uint64_t> expected_version = {});

    StoreRecord load(std::string_view id) const;
    std::shared_ptr<const StoreRecord> find(std::string_view id) const;
    std::vector<StatementSummary> list() const;
    void remove(std::string_view id);

    const std::filesystem::path& directory() const { return directory_; }

private:
    void write_index_locked() const;
    std::filesystem::path document_path(std::string_view id) const;

    std::filesystem::path directory_;
    mutable std::shared_mutex records_mutex_;
    std::mutex write_mutex_;
    std::map<std::string, std::shared_ptr<const StoreRecord>, std::less<>> records_;
};

}  // namespace hyperkb
