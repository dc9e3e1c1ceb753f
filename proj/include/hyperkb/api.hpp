#pragma once

#include <string>
#include <string_view>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hyperkb/expressivity.hpp"
#include "hyperkb/matcher.hpp"
#include "hyperkb/store.hpp"

namespace hyperkb {

struct ServiceOptions {
    std::string cors_origin = "*";
};

/// Decodes a raw query string ("a=1&b=x%20y") into pairs, keeping order and
/// repeats. '+' and percent escapes are decoded.
Query parse_query_string(std::string_view raw);

/// Wire body for a match outcome; the status comes from http_status().
nlohmann::json response_body(const MatchResult& result);

/// {"sigma": [...], "z": ..., "t": ..., "coverage_ratio": ...}. Integers above
/// 2^53-1 are emitted as decimal strings.
nlohmann::json metrics_body(const StatementMetrics& metrics);

/// HTTP front end of a StatementStore. Routes, all under /api/v1:
///
///   GET    /statements                 summaries
///   POST   /statements                 create (201, 409 if it exists)
///   POST   /statements/validate        validation report, never persisted
///   GET    /statements/{id}            record
///   PUT    /statements/{id}            create or replace, honours If-Match
///   DELETE /statements/{id}
///   GET    /statements/{id}/query?...  rule matching
///   GET    /statements/{id}/metrics
class KnowledgeService {
public:
    KnowledgeService(StatementStore& store, ServiceOptions options = {});

    /// Registers every route and the CORS handling on `server`.
    void mount(httplib::Server& server) const;

private:
    StatementStore& store_;
    ServiceOptions options_;
};

}  // namespace hyperkb
