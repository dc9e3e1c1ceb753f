#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperkb/statement.hpp"

namespace hyperkb {

struct QueryPair {
    std::string parameter;
    std::string value;

    bool operator==(const QueryPair&) const = default;
};

/// Parameter-value pairs exactly as the caller sent them. Repeats, unknown
/// names and unknown values are allowed here and reported by match().
using Query = std::vector<QueryPair>;

/// A rule applied. `edge_id` identifies the rule; only `label` goes on the wire.
struct Answer {
    std::string label;
    std::string edge_id;

    bool operator==(const Answer&) const = default;
};

/// Every parameter was supplied but no rule applies.
struct NoRule {
    bool operator==(const NoRule&) const = default;
};

/// No rule applies yet; ask the user for `parameter` and resubmit.
struct MissingParameter {
    std::string parameter;

    bool operator==(const MissingParameter&) const = default;
};

enum class InvalidReason { multi_value, unknown_parameter, unknown_keyword };

struct InvalidQuery {
    InvalidReason reason;
    std::string parameter;  // offending name as sent
    std::string detail;

    bool operator==(const InvalidQuery&) const = default;
};

using MatchResult = std::variant<Answer, NoRule, MissingParameter, InvalidQuery>;

/// 200 for Answer and NoRule, 422 for MissingParameter, 400 for InvalidQuery.
int http_status(const MatchResult& result);

/// "ANSWER", "NO_RULE", "MISSING" or "INVALID".
std::string_view tag_name(const MatchResult& result);

/// "MULTI_VALUE", "UNKNOWN_PARAMETER" or "UNKNOWN_KEYWORD".
std::string_view to_string(InvalidReason reason);

/// Resolves a query against a statement.
///
/// The query is rejected when a parameter is repeated, unknown, or has a value
/// outside every keyword set of that parameter. Otherwise each pair selects
/// its parameter vertex, and the applicable rules are those whose parameter
/// vertices are all selected. The rule with the most parameter vertices wins,
/// ties going to the smallest edge id. With no applicable rule the first
/// parameter (in declaration order) that the query lacks is requested; a
/// complete query yields NoRule.
MatchResult match(const Statement& statement, const Query& query);

/// Literal keyword scan of free text, standing in for entity extraction.
/// Matches are whole-word, canonical (case- and whitespace-insensitive); on
/// overlap the longer keyword wins, then the earlier one. Pairs come out in
/// parameter declaration order carrying the keyword as authored. A parameter
/// with several distinct matches yields several pairs.
Query extract_query(const Statement& statement, std::string_view utterance);

}  // namespace hyperkb
