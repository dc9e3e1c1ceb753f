#include "hyperkb/matcher.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "hyperkb/text.hpp"

namespace hyperkb {

namespace {

bool is_word_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80;
}

struct Occurrence {
    std::size_t pos;
    std::size_t len;
    std::size_t vertex;
    std::size_t keyword;
};

}  // namespace

int http_status(const MatchResult& result) {
    struct {
        int operator()(const Answer&) const { return 200; }
        int operator()(const NoRule&) const { return 200; }
        int operator()(const MissingParameter&) const { return 422; }
        int operator()(const InvalidQuery&) const { return 400; }
    } visitor;
    return std::visit(visitor, result);
}

std::string_view tag_name(const MatchResult& result) {
    constexpr std::string_view names[] = {"ANSWER", "NO_RULE", "MISSING", "INVALID"};
    return names[result.index()];
}

std::string_view to_string(InvalidReason reason) {
    switch (reason) {
        case InvalidReason::multi_value: return "MULTI_VALUE";
        case InvalidReason::unknown_parameter: return "UNKNOWN_PARAMETER";
        case InvalidReason::unknown_keyword: return "UNKNOWN_KEYWORD";
    }
    return "UNKNOWN";
}

MatchResult match(const Statement& statement, const Query& query) {
    // Repeated names first, whether or not the name is known.
    std::set<std::string> names;
    for (const auto& pair : query) {
        if (!names.insert(canonicalize(pair.parameter)).second) {
            return InvalidQuery{InvalidReason::multi_value, pair.parameter,
                                "parameter \"" + pair.parameter + "\" has more than one value"};
        }
    }

    std::vector<std::optional<std::size_t>> indices;
    indices.reserve(query.size());
    for (const auto& pair : query) {
        auto index = statement.parameter_index(pair.parameter);
        if (!index) {
            return InvalidQuery{InvalidReason::unknown_parameter, pair.parameter,
                                "unknown parameter \"" + pair.parameter + "\""};
        }
        indices.push_back(index);
    }

    // selected[p] = parameter vertex chosen for parameter p
    std::vector<std::optional<std::size_t>> selected(statement.parameters().size());
    for (std::size_t i = 0; i < query.size(); ++i) {
        auto vertex = statement.vertex_for_keyword(*indices[i], query[i].value);
        if (!vertex) {
            return InvalidQuery{InvalidReason::unknown_keyword, query[i].parameter,
                                "\"" + query[i].value + "\" is not a known value of \"" + query[i].parameter + "\""};
        }
        selected[*indices[i]] = vertex;
    }

    const auto& pvs = statement.parameter_vertices();
    for (std::size_t e : statement.edges_by_specificity()) {
        const auto& edge = statement.edges()[e];
        const bool applies = std::all_of(edge.parameter_vertices.begin(), edge.parameter_vertices.end(),
                                         [&](std::size_t v) { return selected[pvs[v].parameter] == v; });
        if (applies) return Answer{statement.response_vertices()[edge.response].label, edge.id};
    }

    for (std::size_t p = 0; p < selected.size(); ++p) {
        if (!selected[p]) return MissingParameter{statement.parameters()[p]};
    }
    return NoRule{};
}

Query extract_query(const Statement& statement, std::string_view utterance) {
    const std::string text = canonicalize(utterance);
    const auto& pvs = statement.parameter_vertices();

    std::vector<Occurrence> found;
    for (std::size_t v = 0; v < pvs.size(); ++v) {
        for (std::size_t k = 0; k < pvs[v].canonical_keywords.size(); ++k) {
            const std::string& kw = pvs[v].canonical_keywords[k];
            for (auto pos = text.find(kw); pos != std::string::npos; pos = text.find(kw, pos + 1)) {
                const auto end = pos + kw.size();
                const bool left = pos == 0 || !is_word_char(static_cast<unsigned char>(text[pos - 1]));
                const bool right = end == text.size() || !is_word_char(static_cast<unsigned char>(text[end]));
                if (left && right) found.push_back({pos, kw.size(), v, k});
            }
        }
    }

    std::sort(found.begin(), found.end(), [](const Occurrence& a, const Occurrence& b) {
        if (a.len != b.len) return a.len > b.len;
        if (a.pos != b.pos) return a.pos < b.pos;
        return std::tie(a.vertex, a.keyword) < std::tie(b.vertex, b.keyword);
    });
    std::vector<Occurrence> kept;
    for (const auto& occ : found) {
        const bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const Occurrence& o) {
            return occ.pos < o.pos + o.len && o.pos < occ.pos + occ.len;
        });
        if (!overlaps) kept.push_back(occ);
    }
    std::sort(kept.begin(), kept.end(), [](const Occurrence& a, const Occurrence& b) { return a.pos < b.pos; });

    Query query;
    for (std::size_t p = 0; p < statement.parameters().size(); ++p) {
        std::set<std::string> emitted;
        for (const auto& occ : kept) {
            const auto& vertex = pvs[occ.vertex];
            if (vertex.parameter != p) continue;
            if (emitted.insert(vertex.canonical_keywords[occ.keyword]).second) {
                query.push_back({statement.parameters()[p], vertex.keywords[occ.keyword]});
            }
        }
    }
    return query;
}

}  // namespace hyperkb
