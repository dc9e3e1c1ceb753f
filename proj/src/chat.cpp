#include "hyperkb/chat.hpp"

#include <algorithm>
#include <set>

#include "hyperkb/text.hpp"

namespace hyperkb {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

ChatSession::ChatSession(const Statement& statement) : statement_(statement) {}

void ChatSession::reset() {
    query_.clear();
    awaiting_.reset();
}

void ChatSession::drop(std::string_view parameter) {
    const std::string name = canonicalize(parameter);
    std::erase_if(query_, [&](const QueryPair& p) { return canonicalize(p.parameter) == name; });
}

// Newly extracted values replace earlier values of the same parameter.
void ChatSession::merge(const Query& extracted) {
    std::set<std::string> touched;
    for (const auto& p : extracted) touched.insert(canonicalize(p.parameter));
    for (const auto& name : touched) drop(name);
    query_.insert(query_.end(), extracted.begin(), extracted.end());
}

BotTurn ChatSession::respond(std::string_view utterance) {
    Query extracted = extract_query(statement_, utterance);
    if (awaiting_) {
        const std::string wanted = canonicalize(*awaiting_);
        const bool answered = std::any_of(extracted.begin(), extracted.end(),
                                          [&](const QueryPair& p) { return canonicalize(p.parameter) == wanted; });
        // A bare reply is taken as the value of the requested parameter.
        if (!answered) extracted.push_back({*awaiting_, trim(utterance)});
    }
    merge(extracted);

    const MatchResult result = match(statement_, query_);
    if (const auto* answer = std::get_if<Answer>(&result)) {
        reset();
        return {TurnKind::answer, answer->label, {}};
    }
    if (std::holds_alternative<NoRule>(result)) {
        reset();
        return {TurnKind::no_rule, "no rule applies", {}};
    }
    if (const auto* missing = std::get_if<MissingParameter>(&result)) {
        awaiting_ = missing->parameter;
        return {TurnKind::prompt, missing->parameter + "?", missing->parameter};
    }

    const auto& invalid = std::get<InvalidQuery>(result);
    if (invalid.reason == InvalidReason::unknown_parameter) {
        reset();
        return {TurnKind::invalid, "sorry, " + invalid.detail, {}};
    }
    // Ask again for the parameter whose value was unusable.
    drop(invalid.parameter);
    const auto index = statement_.parameter_index(invalid.parameter);
    const std::string& name = statement_.parameters()[*index];
    awaiting_ = name;
    const std::string reason = invalid.reason == InvalidReason::multi_value
                                   ? "please give a single value for " + name + "."
                                   : "sorry, " + invalid.detail + ".";
    return {TurnKind::invalid, reason + " " + name + "?", name};
}

}  // namespace hyperkb
