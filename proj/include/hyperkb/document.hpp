#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hyperkb/statement.hpp"

namespace hyperkb {

/// The document is not a well-formed statement description (bad JSON, missing
/// or unknown keys, wrong types). Distinct from a ValidationReport, which
/// describes a well-formed but invalid statement.
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Statement ids double as file names and URL path segments.
bool is_valid_statement_id(std::string_view id);

StatementDefinition parse_document_json(const nlohmann::json& doc);
StatementDefinition parse_document(std::string_view text);
StatementDefinition read_document_file(const std::filesystem::path& path);

nlohmann::json to_json(const StatementDefinition& definition);
nlohmann::json to_json(const ValidationReport& report);

}  // namespace hyperkb
