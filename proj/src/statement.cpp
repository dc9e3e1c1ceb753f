#include "hyperkb/statement.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <iterator>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "hyperkb/text.hpp"

namespace hyperkb {

namespace {

constexpr std::size_t kMinLabelLength = 2;

constexpr std::array<std::string_view, 12> kCodeNames = {
    "SELF_REFERENCE",      "SAME_LAYER",          "DUPLICATE_RULE",
    "NO_RESPONSE_VERTEX",  "MULTIPLE_RESPONSE_VERTICES",
    "DUPLICATE_KEYWORD",   "DUPLICATE_RESPONSE_LABEL",
    "EMPTY_KEYWORDS",      "BAD_LABEL_LENGTH",    "DANGLING_VERTEX_REF",
    "UNKNOWN_PARAMETER",   "AMBIGUOUS_EDGE_PAIR",
};

std::string quoted(std::string_view s) {
    std::string out = "\"";
    out += s;
    out += '"';
    return out;
}

// Error checks over a raw definition. Mirrors every invariant a Statement holds.
void check_definition(const StatementDefinition& def, ValidationReport& report) {
    // Parameters.
    if (def.parameters.empty()) {
        report.add(ViolationCode::unknown_parameter, "statement declares no parameters");
    }
    std::map<std::string, std::string> declared;  // canonical -> as declared
    for (const auto& p : def.parameters) {
        if (canonical_length(p) < kMinLabelLength) {
            report.add(ViolationCode::bad_label_length,
                       "parameter name " + quoted(p) + " is shorter than 2 characters", {p});
        }
        if (!declared.emplace(canonicalize(p), p).second) {
            report.add(ViolationCode::unknown_parameter, "parameter " + quoted(p) + " is declared twice", {p});
        }
    }

    // Vertex ids.
    std::map<std::string, const VertexDefinition*> vertices;
    for (const auto& v : def.vertices) {
        if (v.id.empty()) {
            report.add(ViolationCode::dangling_vertex_ref, "vertex with empty id");
            continue;
        }
        if (!vertices.emplace(v.id, &v).second) {
            report.add(ViolationCode::dangling_vertex_ref, "vertex id " + quoted(v.id) + " is not unique", {v.id});
        }
    }

    // Parameter vertices and keywords.
    std::set<std::string> referenced;
    std::map<std::pair<std::string, std::string>, std::string> keyword_owner;  // (param, kw) -> vertex
    std::map<std::string, std::string> label_owner;
    for (const auto& v : def.vertices) {
        if (v.kind == VertexKind::response) {
            if (canonical_length(v.label) < kMinLabelLength) {
                report.add(ViolationCode::bad_label_length,
                           "response label " + quoted(v.label) + " is shorter than 2 characters", {v.id});
            }
            auto [it, inserted] = label_owner.emplace(v.label, v.id);
            if (!inserted) {
                report.add(ViolationCode::duplicate_response_label,
                           "response label " + quoted(v.label) + " is used twice", {it->second, v.id});
            }
            continue;
        }
        const std::string param = canonicalize(v.parameter);
        if (!declared.contains(param)) {
            report.add(ViolationCode::unknown_parameter,
                       "vertex " + quoted(v.id) + " uses undeclared parameter " + quoted(v.parameter), {v.id});
        }
        referenced.insert(param);
        if (v.keywords.empty()) {
            report.add(ViolationCode::empty_keywords, "vertex " + quoted(v.id) + " has no keywords", {v.id});
        }
        for (const auto& k : v.keywords) {
            const std::string ck = canonicalize(k);
            if (utf8_length(ck) < kMinLabelLength) {
                report.add(ViolationCode::bad_label_length,
                           "keyword " + quoted(k) + " is shorter than 2 characters", {v.id});
                continue;
            }
            auto [it, inserted] = keyword_owner.emplace(std::pair{param, ck}, v.id);
            if (!inserted) {
                std::vector<std::string> ids{it->second};
                if (it->second != v.id) ids.push_back(v.id);
                report.add(ViolationCode::duplicate_keyword,
                           "keyword " + quoted(ck) + " appears twice for parameter " + quoted(v.parameter),
                           std::move(ids));
            }
        }
    }
    for (const auto& [canonical, name] : declared) {
        if (!referenced.contains(canonical)) {
            report.add(ViolationCode::unknown_parameter,
                       "parameter " + quoted(name) + " has no vertex", {name});
        }
    }

    // Edges.
    std::set<std::string> edge_ids;
    std::map<std::set<std::string>, std::string> rule_owner;  // parameter-vertex set -> edge
    for (const auto& e : def.edges) {
        if (e.id.empty()) {
            report.add(ViolationCode::dangling_vertex_ref, "edge with empty id");
        } else if (!edge_ids.insert(e.id).second) {
            report.add(ViolationCode::dangling_vertex_ref, "edge id " + quoted(e.id) + " is not unique", {e.id});
        }

        std::set<std::string> seen;
        std::set<std::string> params;
        std::vector<std::string> responses;
        std::map<std::string, std::string> by_parameter;
        for (const auto& vid : e.vertices) {
            auto it = vertices.find(vid);
            if (it == vertices.end()) {
                report.add(ViolationCode::dangling_vertex_ref,
                           "edge " + quoted(e.id) + " references unknown vertex " + quoted(vid), {e.id, vid});
                continue;
            }
            if (!seen.insert(vid).second) {
                report.add(ViolationCode::self_reference,
                           "edge " + quoted(e.id) + " contains vertex " + quoted(vid) + " twice", {e.id, vid});
                continue;
            }
            const VertexDefinition& v = *it->second;
            if (v.kind == VertexKind::response) {
                responses.push_back(vid);
                continue;
            }
            params.insert(vid);
            auto [pit, inserted] = by_parameter.emplace(canonicalize(v.parameter), vid);
            if (!inserted) {
                report.add(ViolationCode::same_layer,
                           "edge " + quoted(e.id) + " joins two vertices of parameter " + quoted(v.parameter),
                           {e.id, pit->second, vid});
            }
        }
        if (responses.empty()) {
            report.add(ViolationCode::no_response_vertex, "edge " + quoted(e.id) + " has no response vertex", {e.id});
        } else if (responses.size() > 1) {
            std::vector<std::string> ids{e.id};
            ids.insert(ids.end(), responses.begin(), responses.end());
            report.add(ViolationCode::multiple_response_vertices,
                       "edge " + quoted(e.id) + " has more than one response vertex", std::move(ids));
        }
        if (params.empty() && !responses.empty()) {
            report.add(ViolationCode::same_layer,
                       "edge " + quoted(e.id) + " connects no parameter vertex", {e.id});
        }
        if (!params.empty()) {
            auto [rit, inserted] = rule_owner.emplace(params, e.id);
            if (!inserted) {
                report.add(ViolationCode::duplicate_rule,
                           "edges " + quoted(rit->second) + " and " + quoted(e.id) + " cover the same vertices",
                           {rit->second, e.id});
            }
        }
    }
}

bool is_subset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& large) {
    return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

}  // namespace

// ─── Violations ────────────────────────────────────────────────

std::string_view to_string(ViolationCode code) {
    return kCodeNames.at(static_cast<std::size_t>(code));
}

std::optional<ViolationCode> parse_violation_code(std::string_view name) {
    for (std::size_t i = 0; i < kCodeNames.size(); ++i) {
        if (kCodeNames[i] == name) return static_cast<ViolationCode>(i);
    }
    return std::nullopt;
}

Severity severity_of(ViolationCode code) {
    return code == ViolationCode::ambiguous_edge_pair ? Severity::warning : Severity::error;
}

void ValidationReport::add(ViolationCode code, std::string message, std::vector<std::string> ids) {
    violations_.push_back({code, std::move(message), std::move(ids)});
}

void ValidationReport::finalize() {
    std::sort(violations_.begin(), violations_.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.code, a.ids, a.message) < std::tie(b.code, b.ids, b.message);
    });
    violations_.erase(std::unique(violations_.begin(), violations_.end()), violations_.end());
}

bool ValidationReport::ok() const {
    return std::none_of(violations_.begin(), violations_.end(),
                        [](const Violation& v) { return v.severity() == Severity::error; });
}

bool ValidationReport::contains(ViolationCode code) const {
    return count(code) > 0;
}

std::size_t ValidationReport::count(ViolationCode code) const {
    return static_cast<std::size_t>(std::count_if(violations_.begin(), violations_.end(),
                                                  [code](const Violation& v) { return v.code == code; }));
}

ValidationReport validate(const StatementDefinition& definition) {
    auto built = build_statement(definition);
    if (auto* report = std::get_if<ValidationReport>(&built)) return std::move(*report);

    ValidationReport report;
    for (auto& [a, b] : lint_ambiguities(std::get<Statement>(built))) {
        report.add(ViolationCode::ambiguous_edge_pair,
                   "edges " + quoted(a) + " and " + quoted(b) + " can match the same query", {a, b});
    }
    report.finalize();
    return report;
}

// ─── Statement ─────────────────────────────────────────────────

std::optional<std::size_t> Statement::parameter_index(std::string_view name) const {
    auto it = parameter_by_name_.find(canonicalize(name));
    if (it == parameter_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<Statement::VertexRef> Statement::find_vertex(std::string_view id) const {
    auto it = vertex_by_id_.find(std::string(id));
    if (it == vertex_by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Statement::vertex_for_keyword(std::size_t parameter, std::string_view value) const {
    if (parameter >= keyword_index_.size()) return std::nullopt;
    const auto& index = keyword_index_[parameter];
    auto it = index.find(canonicalize(value));
    if (it == index.end()) return std::nullopt;
    return it->second;
}

bool operator==(const Statement& a, const Statement& b) {
    if (a.id() != b.id() || a.name() != b.name() || a.parameters() != b.parameters()) return false;

    using ParamView = std::map<std::string, std::pair<std::string, std::set<std::string>>>;
    auto params = [](const Statement& s) {
        ParamView out;
        for (const auto& v : s.parameter_vertices()) {
            out[v.id] = {s.parameters()[v.parameter],
                         std::set<std::string>(v.canonical_keywords.begin(), v.canonical_keywords.end())};
        }
        return out;
    };
    auto responses = [](const Statement& s) {
        std::map<std::string, std::string> out;
        for (const auto& r : s.response_vertices()) out[r.id] = r.label;
        return out;
    };
    auto edges = [](const Statement& s) {
        std::map<std::string, std::set<std::string>> out;
        for (const auto& e : s.definition().edges) out[e.id] = {e.vertices.begin(), e.vertices.end()};
        return out;
    };
    return params(a) == params(b) && responses(a) == responses(b) && edges(a) == edges(b);
}

BuildResult build_statement(StatementDefinition definition) {
    ValidationReport report;
    check_definition(definition, report);
    if (!report.ok()) {
        report.finalize();
        return report;
    }

    Statement s;
    s.definition_ = std::move(definition);
    const auto& def = s.definition_;

    s.keyword_index_.resize(def.parameters.size());
    for (std::size_t i = 0; i < def.parameters.size(); ++i) {
        s.parameter_by_name_.emplace(canonicalize(def.parameters[i]), i);
    }
    for (const auto& v : def.vertices) {
        if (v.kind == VertexKind::response) {
            s.vertex_by_id_.emplace(v.id, Statement::VertexRef{VertexKind::response, s.response_vertices_.size()});
            s.response_vertices_.push_back({v.id, v.label});
            continue;
        }
        Statement::ParameterVertex pv{v.id, s.parameter_by_name_.at(canonicalize(v.parameter)), v.keywords, {}};
        const std::size_t index = s.parameter_vertices_.size();
        for (const auto& k : v.keywords) {
            pv.canonical_keywords.push_back(canonicalize(k));
            s.keyword_index_[pv.parameter].emplace(pv.canonical_keywords.back(), index);
        }
        s.vertex_by_id_.emplace(v.id, Statement::VertexRef{VertexKind::parameter, index});
        s.parameter_vertices_.push_back(std::move(pv));
    }
    for (const auto& e : def.edges) {
        Statement::Hyperedge edge{e.id, {}, 0};
        for (const auto& vid : e.vertices) {
            const auto ref = s.vertex_by_id_.at(vid);
            if (ref.kind == VertexKind::response) {
                edge.response = ref.index;
            } else {
                edge.parameter_vertices.push_back(ref.index);
            }
        }
        std::sort(edge.parameter_vertices.begin(), edge.parameter_vertices.end(),
                  [&](std::size_t x, std::size_t y) {
                      return s.parameter_vertices_[x].parameter < s.parameter_vertices_[y].parameter;
                  });
        s.edges_.push_back(std::move(edge));
    }

    s.edges_by_specificity_.resize(s.edges_.size());
    for (std::size_t i = 0; i < s.edges_.size(); ++i) s.edges_by_specificity_[i] = i;
    std::sort(s.edges_by_specificity_.begin(), s.edges_by_specificity_.end(), [&](std::size_t x, std::size_t y) {
        const auto& ex = s.edges_[x];
        const auto& ey = s.edges_[y];
        if (ex.parameter_vertices.size() != ey.parameter_vertices.size()) {
            return ex.parameter_vertices.size() > ey.parameter_vertices.size();
        }
        return ex.id < ey.id;
    });
    return s;
}

Statement build_statement_or_throw(StatementDefinition definition) {
    auto built = build_statement(std::move(definition));
    if (auto* report = std::get_if<ValidationReport>(&built)) {
        const auto& first = report->violations().front();
        throw std::invalid_argument(std::string(to_string(first.code)) + ": " + first.message);
    }
    return std::get<Statement>(std::move(built));
}

// ─── Edge drafting ─────────────────────────────────────────────

std::optional<ViolationCode> validate_edge_addition(const Statement& statement, const EdgeDraft& draft) {
    std::vector<std::string> members = draft.members;
    if (draft.extends) {
        const auto& edges = statement.definition().edges;
        auto it = std::find_if(edges.begin(), edges.end(),
                               [&](const EdgeDefinition& e) { return e.id == *draft.extends; });
        if (it == edges.end()) return ViolationCode::dangling_vertex_ref;
        members.insert(members.end(), it->vertices.begin(), it->vertices.end());
    }

    const auto from = statement.find_vertex(draft.from);
    const auto to = statement.find_vertex(draft.to);
    if (!from || !to) return ViolationCode::dangling_vertex_ref;
    for (const auto& m : members) {
        if (!statement.find_vertex(m)) return ViolationCode::dangling_vertex_ref;
    }

    // A link that starts and ends at the same vertex, or re-enters the rule.
    if (draft.from == draft.to) return ViolationCode::self_reference;
    if (std::find(members.begin(), members.end(), draft.to) != members.end()) {
        return ViolationCode::self_reference;
    }

    // Both endpoints in one layer.
    const auto& pvs = statement.parameter_vertices();
    if (from->kind == VertexKind::response && to->kind == VertexKind::response) return ViolationCode::same_layer;
    if (from->kind == VertexKind::parameter && to->kind == VertexKind::parameter &&
        pvs[from->index].parameter == pvs[to->index].parameter) {
        return ViolationCode::same_layer;
    }

    std::vector<std::string> all = members;
    all.push_back(draft.from);
    all.push_back(draft.to);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    std::set<std::string> params;
    std::set<std::size_t> layers;
    std::size_t responses = 0;
    for (const auto& id : all) {
        const auto ref = *statement.find_vertex(id);
        if (ref.kind == VertexKind::response) {
            ++responses;
            continue;
        }
        if (!layers.insert(pvs[ref.index].parameter).second) return ViolationCode::same_layer;
        params.insert(id);
    }
    if (responses > 1) return ViolationCode::multiple_response_vertices;

    // Settled drafts must not repeat an existing rule.
    const bool settled = responses == 1 || layers.size() == statement.parameters().size();
    if (settled && !params.empty()) {
        for (const auto& e : statement.edges()) {
            if (draft.extends && e.id == *draft.extends) continue;
            if (e.parameter_vertices.size() != params.size()) continue;
            const bool same = std::all_of(e.parameter_vertices.begin(), e.parameter_vertices.end(),
                                          [&](std::size_t i) { return params.contains(pvs[i].id); });
            if (same) return ViolationCode::duplicate_rule;
        }
    }
    return std::nullopt;
}

// ─── Ambiguity lint ────────────────────────────────────────────

std::vector<std::pair<std::string, std::string>> lint_ambiguities(const Statement& statement) {
    const auto& edges = statement.edges();
    const auto& pvs = statement.parameter_vertices();

    std::vector<std::vector<std::size_t>> sets;  // sorted vertex indices
    for (const auto& e : edges) {
        auto s = e.parameter_vertices;
        std::sort(s.begin(), s.end());
        sets.push_back(std::move(s));
    }

    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t a = 0; a < edges.size(); ++a) {
        for (std::size_t b = a + 1; b < edges.size(); ++b) {
            const auto& sa = sets[a];
            const auto& sb = sets[b];
            if (sa.size() < sb.size() && is_subset(sa, sb)) {
                pairs.emplace_back(edges[a].id, edges[b].id);
                continue;
            }
            if (sb.size() < sa.size() && is_subset(sb, sa)) {
                pairs.emplace_back(edges[b].id, edges[a].id);
                continue;
            }
            // Incomparable: both are maximal for the union query unless the
            // union is inconsistent (two values for one parameter) or some rule
            // inside the union strictly contains one of them.
            std::vector<std::size_t> merged;
            std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(merged));
            std::set<std::size_t> layers;
            bool consistent = true;
            for (auto v : merged) consistent = consistent && layers.insert(pvs[v].parameter).second;
            if (!consistent) continue;
            const bool dominated = std::any_of(sets.begin(), sets.end(), [&](const auto& c) {
                return is_subset(c, merged) && ((c.size() > sa.size() && is_subset(sa, c)) ||
                                                (c.size() > sb.size() && is_subset(sb, c)));
            });
            if (dominated) continue;
            pairs.emplace_back(std::min(edges[a].id, edges[b].id), std::max(edges[a].id, edges[b].id));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace hyperkb
