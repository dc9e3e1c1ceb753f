#pragma once

#include <algorithm>
#include <string>
#include <string_view>

#include "hyperkb/document.hpp"
#include "hyperkb/statement.hpp"

namespace hyperkb::testing {

inline std::string fixture_path(std::string_view name) {
    return std::string(HYPERKB_FIXTURES) + "/" + std::string(name);
}

/// The accident-insurance pricing statement shipped in fixtures/.
inline StatementDefinition toy_definition() {
    return read_document_file(fixture_path("toy-accident.json"));
}

inline Statement toy() {
    return build_statement_or_throw(toy_definition());
}

/// One parameter, one vertex {"aa"}, one response "ok", one rule.
inline StatementDefinition minimal_definition() {
    StatementDefinition def;
    def.id = "minimal";
    def.name = "Minimal";
    def.parameters = {"pp"};
    def.vertices = {{"v", VertexKind::parameter, "pp", {"aa"}, ""}, {"r", VertexKind::response, "", {}, "ok"}};
    def.edges = {{"e", {"v", "r"}}};
    return def;
}

inline VertexDefinition& vertex(StatementDefinition& def, std::string_view id) {
    auto it = std::find_if(def.vertices.begin(), def.vertices.end(),
                           [&](const VertexDefinition& v) { return v.id == id; });
    return *it;
}

inline void remove_edge(StatementDefinition& def, std::string_view id) {
    std::erase_if(def.edges, [&](const EdgeDefinition& e) { return e.id == id; });
}

inline const ValidationReport& report_of(const BuildResult& r) {
    return std::get<ValidationReport>(r);
}

}  // namespace hyperkb::testing
