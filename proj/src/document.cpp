#include "hyperkb/document.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace hyperkb {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw DocumentError("unknown key \"" + key + "\" in " + std::string(where));
    }
}

const json& require(const json& obj, const char* key, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw DocumentError("missing key \"" + std::string(key) + "\" in " + std::string(where));
    return *it;
}

std::string require_string(const json& obj, const char* key, std::string_view where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) throw DocumentError("\"" + std::string(key) + "\" in " + std::string(where) + " must be a string");
    return v.get<std::string>();
}

std::vector<std::string> require_strings(const json& obj, const char* key, std::string_view where) {
    const json& v = require(obj, key, where);
    if (!v.is_array()) throw DocumentError("\"" + std::string(key) + "\" in " + std::string(where) + " must be an array");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw DocumentError("\"" + std::string(key) + "\" in " + std::string(where) + " must contain strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

const json& require_array(const json& obj, const char* key, std::string_view where) {
    const json& v = require(obj, key, where);
    if (!v.is_array()) throw DocumentError("\"" + std::string(key) + "\" in " + std::string(where) + " must be an array");
    return v;
}

}  // namespace

bool is_valid_statement_id(std::string_view id) {
    if (id.empty() || id.size() > 128 || id.front() == '.') return false;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        if (!ok) return false;
    }
    return true;
}

StatementDefinition parse_document_json(const json& doc) {
    if (!doc.is_object()) throw DocumentError("statement document must be a JSON object");
    reject_unknown_keys(doc, {"id", "name", "parameters", "vertices", "edges"}, "statement");

    StatementDefinition def;
    def.id = require_string(doc, "id", "statement");
    if (!is_valid_statement_id(def.id)) {
        throw DocumentError("statement id \"" + def.id + "\" must match [A-Za-z0-9_-][A-Za-z0-9._-]{0,127}");
    }
    def.name = require_string(doc, "name", "statement");
    def.parameters = require_strings(doc, "parameters", "statement");

    for (const auto& v : require_array(doc, "vertices", "statement")) {
        if (!v.is_object()) throw DocumentError("vertices must be objects");
        VertexDefinition vertex;
        vertex.id = require_string(v, "id", "vertex");
        const std::string where = "vertex \"" + vertex.id + "\"";
        const std::string kind = require_string(v, "kind", where);
        if (kind == "parameter") {
            reject_unknown_keys(v, {"id", "kind", "parameter", "keywords"}, where);
            vertex.kind = VertexKind::parameter;
            vertex.parameter = require_string(v, "parameter", where);
            vertex.keywords = require_strings(v, "keywords", where);
        } else if (kind == "response") {
            reject_unknown_keys(v, {"id", "kind", "label"}, where);
            vertex.kind = VertexKind::response;
            vertex.label = require_string(v, "label", where);
        } else {
            throw DocumentError("unknown vertex kind \"" + kind + "\" in " + where);
        }
        def.vertices.push_back(std::move(vertex));
    }

    for (const auto& e : require_array(doc, "edges", "statement")) {
        if (!e.is_object()) throw DocumentError("edges must be objects");
        EdgeDefinition edge;
        edge.id = require_string(e, "id", "edge");
        const std::string where = "edge \"" + edge.id + "\"";
        reject_unknown_keys(e, {"id", "vertices"}, where);
        edge.vertices = require_strings(e, "vertices", where);
        def.edges.push_back(std::move(edge));
    }
    return def;
}

StatementDefinition parse_document(std::string_view text) {
    json doc = json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded()) throw DocumentError("statement document is not valid JSON");
    return parse_document_json(doc);
}

StatementDefinition read_document_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DocumentError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
}

json to_json(const StatementDefinition& def) {
    json vertices = json::array();
    for (const auto& v : def.vertices) {
        if (v.kind == VertexKind::parameter) {
            vertices.push_back(
                {{"id", v.id}, {"kind", "parameter"}, {"parameter", v.parameter}, {"keywords", v.keywords}});
        } else {
            vertices.push_back({{"id", v.id}, {"kind", "response"}, {"label", v.label}});
        }
    }
    json edges = json::array();
    for (const auto& e : def.edges) edges.push_back({{"id", e.id}, {"vertices", e.vertices}});
    return {{"id", def.id},
            {"name", def.name},
            {"parameters", def.parameters},
            {"vertices", std::move(vertices)},
            {"edges", std::move(edges)}};
}

json to_json(const ValidationReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations()) {
        violations.push_back({{"code", to_string(v.code)},
                              {"severity", v.severity() == Severity::error ? "error" : "warning"},
                              {"message", v.message},
                              {"ids", v.ids}});
    }
    return {{"valid", report.ok()}, {"violations", std::move(violations)}};
}

}  // namespace hyperkb
