#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace hyperkb {

enum class VertexKind { parameter, response };

/// One vertex as authored. Parameter vertices use `parameter` and `keywords`;
/// response vertices use `label`.
struct VertexDefinition {
    std::string id;
    VertexKind kind = VertexKind::parameter;
    std::string parameter;
    std::vector<std::string> keywords;
    std::string label;

    bool operator==(const VertexDefinition&) const = default;
};

struct EdgeDefinition {
    std::string id;
    std::vector<std::string> vertices;

    bool operator==(const EdgeDefinition&) const = default;
};

/// Unvalidated statement description, exactly as read from a document or
/// request body. Turned into a Statement by build_statement().
struct StatementDefinition {
    std::string id;
    std::string name;
    std::vector<std::string> parameters;
    std::vector<VertexDefinition> vertices;
    std::vector<EdgeDefinition> edges;

    bool operator==(const StatementDefinition&) const = default;
};

// Declaration order is also the sort order of reports.
enum class ViolationCode {
    self_reference,
    same_layer,
    duplicate_rule,
    no_response_vertex,
    multiple_response_vertices,
    duplicate_keyword,
    duplicate_response_label,
    empty_keywords,
    bad_label_length,
    dangling_vertex_ref,
    unknown_parameter,
    ambiguous_edge_pair,
};

enum class Severity { error, warning };

/// Wire name, e.g. "SELF_REFERENCE".
std::string_view to_string(ViolationCode code);
std::optional<ViolationCode> parse_violation_code(std::string_view name);
Severity severity_of(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::string message;
    std::vector<std::string> ids;

    Severity severity() const { return severity_of(code); }
    auto operator<=>(const Violation&) const = default;
};

class ValidationReport {
public:
    void add(ViolationCode code, std::string message, std::vector<std::string> ids = {});

    /// Sorts and removes exact duplicates so that equal inputs give equal reports.
    void finalize();

    /// True when no error-severity violation is present (warnings allowed).
    bool ok() const;
    bool empty() const { return violations_.empty(); }
    bool contains(ViolationCode code) const;
    std::size_t count(ViolationCode code) const;
    const std::vector<Violation>& violations() const { return violations_; }

    bool operator==(const ValidationReport&) const = default;

private:
    std::vector<Violation> violations_;
};

/// Full structural validation of a definition. Ambiguity warnings are only
/// computed when there are no errors.
ValidationReport validate(const StatementDefinition& definition);

/// A contract statement: a validated hypergraph whose parameter vertices carry
/// keyword sets, whose response vertices carry answer labels, and whose
/// hyperedges are the rules. Immutable once built.
class Statement {
public:
    struct ParameterVertex {
        std::string id;
        std::size_t parameter;                      // index into parameters()
        std::vector<std::string> keywords;          // as authored
        std::vector<std::string> canonical_keywords;  // same order as keywords
    };

    struct ResponseVertex {
        std::string id;
        std::string label;
    };

    struct Hyperedge {
        std::string id;
        std::vector<std::size_t> parameter_vertices;  // sorted by parameter index
        std::size_t response;                       // index into response_vertices()
    };

    struct VertexRef {
        VertexKind kind;
        std::size_t index;
    };

    const std::string& id() const { return definition_.id; }
    const std::string& name() const { return definition_.name; }
    const std::vector<std::string>& parameters() const { return definition_.parameters; }
    const std::vector<ParameterVertex>& parameter_vertices() const { return parameter_vertices_; }
    const std::vector<ResponseVertex>& response_vertices() const { return response_vertices_; }
    const std::vector<Hyperedge>& edges() const { return edges_; }

    /// Edge indices ordered by decreasing parameter-vertex count, then by id.
    const std::vector<std::size_t>& edges_by_specificity() const { return edges_by_specificity_; }

    std::optional<std::size_t> parameter_index(std::string_view name) const;
    std::optional<VertexRef> find_vertex(std::string_view id) const;

    /// Parameter vertex of `parameter` whose keyword set contains `value`
    /// (compared canonically). At most one exists by keyword disjointness.
    std::optional<std::size_t> vertex_for_keyword(std::size_t parameter, std::string_view value) const;

    /// The definition this statement was built from.
    const StatementDefinition& definition() const { return definition_; }

    /// Semantic equality: same id, name, parameter order, vertex keyword sets
    /// (canonical, order-free), response labels and edge vertex-id sets.
    friend bool operator==(const Statement& a, const Statement& b);

private:
    friend std::variant<Statement, ValidationReport> build_statement(StatementDefinition definition);
    Statement() = default;

    StatementDefinition definition_;
    std::vector<ParameterVertex> parameter_vertices_;
    std::vector<ResponseVertex> response_vertices_;
    std::vector<Hyperedge> edges_;
    std::vector<std::size_t> edges_by_specificity_;
    std::unordered_map<std::string, VertexRef> vertex_by_id_;
    std::unordered_map<std::string, std::size_t> parameter_by_name_;  // canonical name
    // canonical keyword -> vertex, one map per parameter
    std::vector<std::unordered_map<std::string, std::size_t>> keyword_index_;
};

using BuildResult = std::variant<Statement, ValidationReport>;

/// Builds a Statement, or returns the complete report when any error-severity
/// violation is present.
BuildResult build_statement(StatementDefinition definition);

/// Unwraps a BuildResult, throwing std::invalid_argument with the first
/// violation when it holds a report. Convenience for fixtures and tools.
Statement build_statement_or_throw(StatementDefinition definition);

/// A link being drawn in an editor. The edge under construction holds
/// `members` (empty for a fresh edge) plus the edge `extends`, if any; drawing
/// from `from` to `to` adds both endpoints to it.
struct EdgeDraft {
    std::string from;
    std::string to;
    std::vector<std::string> members;
    std::optional<std::string> extends;
};

/// Authoring-time check of one drawn link. Returns nullopt when accepted.
///
/// DUPLICATE_RULE is reported once the draft's parameter-vertex set equals an
/// existing rule's and the draft can no longer become a different rule: it
/// already holds a response vertex, or it already spans every parameter.
std::optional<ViolationCode> validate_edge_addition(const Statement& statement, const EdgeDraft& draft);

/// Pairs of edge ids that can compete for the same query: strict subsets
/// (subset first), and incomparable pairs that are both inclusion-maximal
/// candidates for the query over their union (lexicographic order). Sorted.
std::vector<std::pair<std::string, std::string>> lint_ambiguities(const Statement& statement);

}  // namespace hyperkb
