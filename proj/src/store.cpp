#include "hyperkb/store.hpp"

#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "hyperkb/document.hpp"

namespace hyperkb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kIndexFile = "index.json";

void write_atomically(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw StoreError(StoreErrc::io, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw StoreError(StoreErrc::io, "failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw StoreError(StoreErrc::io, "cannot replace " + path.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError(StoreErrc::io, "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string_view to_string(StoreErrc code) {
    switch (code) {
        case StoreErrc::not_found: return "NOT_FOUND";
        case StoreErrc::version_conflict: return "VERSION_CONFLICT";
        case StoreErrc::validation_failed: return "VALIDATION_FAILED";
        case StoreErrc::io: return "IO_ERROR";
    }
    return "UNKNOWN";
}

std::string format_timestamp(Timestamp t) {
    const auto secs = std::chrono::time_point_cast<std::chrono::seconds>(t);
    const auto millis = (t - secs).count();
    const std::time_t tt = std::chrono::system_clock::to_time_t(secs);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << millis << 'Z';
    return out.str();
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    std::tm tm{};
    std::istringstream in{std::string(text)};
    in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%S");
    char dot = 0;
    int millis = 0;
    char zone = 0;
    in >> dot >> millis >> zone;
    if (in.fail() || dot != '.' || zone != 'Z' || millis < 0 || millis > 999) return std::nullopt;
    const std::time_t tt = timegm(&tm);
    return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::from_time_t(tt)) +
           std::chrono::milliseconds(millis);
}

StatementStore::StatementStore(fs::path directory) : directory_(std::move(directory)) {
    std::error_code ec;
    if (!fs::exists(directory_, ec)) {
        fs::create_directories(directory_, ec);
        if (ec) throw StoreError(StoreErrc::io, "cannot create store directory " + directory_.string());
    }
    if (!fs::is_directory(directory_, ec)) {
        throw StoreError(StoreErrc::io, directory_.string() + " is not a directory");
    }
    // Probe readability; directory_iterator throws on permission errors.
    fs::directory_iterator probe(directory_, ec);
    if (ec) throw StoreError(StoreErrc::io, "cannot read store directory " + directory_.string() + ": " + ec.message());

    const fs::path index_path = directory_ / kIndexFile;
    if (!fs::exists(index_path)) return;

    json index = json::parse(read_file(index_path), nullptr, false);
    if (index.is_discarded() || !index.contains("statements") || !index["statements"].is_object()) {
        throw StoreError(StoreErrc::io, "corrupt store index " + index_path.string());
    }
    for (const auto& [id, entry] : index["statements"].items()) {
        try {
            auto built = build_statement(parse_document(read_file(document_path(id))));
            if (std::holds_alternative<ValidationReport>(built)) {
                throw StoreError(StoreErrc::io, "stored statement " + id + " no longer validates");
            }
            auto stamp = parse_timestamp(entry.at("updated_at").get<std::string>());
            if (!stamp) throw StoreError(StoreErrc::io, "bad timestamp for " + id);
            records_.emplace(id, std::make_shared<const StoreRecord>(StoreRecord{
                                     std::get<Statement>(std::move(built)), entry.at("version").get<std::uint64_t>(),
                                     *stamp}));
        } catch (const DocumentError& e) {
            throw StoreError(StoreErrc::io, "corrupt document for " + id + ": " + e.what());
        } catch (const json::exception& e) {
            throw StoreError(StoreErrc::io, "corrupt index entry for " + id + ": " + e.what());
        }
    }
}

fs::path StatementStore::document_path(std::string_view id) const {
    return directory_ / (std::string(id) + ".json");
}

void StatementStore::write_index_locked() const {
    json statements = json::object();
    {
        std::shared_lock lock(records_mutex_);
        for (const auto& [id, record] : records_) {
            statements[id] = {{"version", record->version}, {"updated_at", format_timestamp(record->updated_at)}};
        }
    }
    write_atomically(directory_ / kIndexFile, json{{"statements", std::move(statements)}}.dump(2) + "\n");
}

StoreRecord StatementStore::save(const StatementDefinition& definition, std::optional<std::uint64_t> expected_version) {
    if (!is_valid_statement_id(definition.id)) {
        throw StoreError(StoreErrc::validation_failed, "invalid statement id \"" + definition.id + "\"");
    }
    auto built = build_statement(definition);
    if (auto* report = std::get_if<ValidationReport>(&built)) {
        throw StoreError(StoreErrc::validation_failed, "statement \"" + definition.id + "\" is invalid", *report);
    }

    std::lock_guard write_lock(write_mutex_);
    const auto current = find(definition.id);
    const std::uint64_t current_version = current ? current->version : 0;
    if (expected_version && *expected_version != current_version) {
        throw StoreError(StoreErrc::version_conflict, "statement \"" + definition.id + "\" is at version " +
                                                          std::to_string(current_version) + ", expected " +
                                                          std::to_string(*expected_version));
    }

    auto record = std::make_shared<const StoreRecord>(
        StoreRecord{std::get<Statement>(std::move(built)), current_version + 1,
                    std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now())});
    write_atomically(document_path(definition.id), to_json(record->statement.definition()).dump(2) + "\n");
    {
        std::unique_lock lock(records_mutex_);
        records_.insert_or_assign(definition.id, record);
    }
    write_index_locked();
    return *record;
}

std::shared_ptr<const StoreRecord> StatementStore::find(std::string_view id) const {
    std::shared_lock lock(records_mutex_);
    auto it = records_.find(id);
    return it == records_.end() ? nullptr : it->second;
}

StoreRecord StatementStore::load(std::string_view id) const {
    auto record = find(id);
    if (!record) throw StoreError(StoreErrc::not_found, "no statement \"" + std::string(id) + "\"");
    return *record;
}

std::vector<StatementSummary> StatementStore::list() const {
    std::vector<std::shared_ptr<const StoreRecord>> snapshot;
    {
        std::shared_lock lock(records_mutex_);
        for (const auto& [id, record] : records_) snapshot.push_back(record);
    }
    std::vector<StatementSummary> out;
    out.reserve(snapshot.size());
    for (const auto& record : snapshot) {
        const auto& s = record->statement;
        out.push_back({s.id(), s.name(), s.parameters().size(), statement_expressivity(s),
                       total_questions_covered(s), record->version});
    }
    return out;
}

void StatementStore::remove(std::string_view id) {
    std::lock_guard write_lock(write_mutex_);
    {
        std::unique_lock lock(records_mutex_);
        auto it = records_.find(id);
        if (it == records_.end()) throw StoreError(StoreErrc::not_found, "no statement \"" + std::string(id) + "\"");
        records_.erase(it);
    }
    write_index_locked();
    std::error_code ec;
    fs::remove(document_path(id), ec);
}

}  // namespace hyperkb
