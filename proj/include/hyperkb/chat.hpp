#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hyperkb/matcher.hpp"
#include "hyperkb/statement.hpp"

namespace hyperkb {

enum class TurnKind { answer, no_rule, prompt, invalid };

struct BotTurn {
    TurnKind kind;
    std::string text;       // line shown to the user
    std::string parameter;  // requested parameter for prompt/invalid turns
};

/// Conversation loop between a user and one statement: extract parameter
/// values from each utterance, merge them into the running query, match, and
/// prompt for the missing parameter until a rule answers or none can.
///
/// Holds a reference to the statement, which must outlive the session.
class ChatSession {
public:
    explicit ChatSession(const Statement& statement);

    BotTurn respond(std::string_view utterance);

    const Query& query() const { return query_; }
    const std::optional<std::string>& awaiting() const { return awaiting_; }
    void reset();

private:
    void merge(const Query& extracted);
    void drop(std::string_view parameter);

    const Statement& statement_;
    Query query_;
    std::optional<std::string> awaiting_;
};

}  // namespace hyperkb
