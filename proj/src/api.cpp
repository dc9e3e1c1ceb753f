#include "hyperkb/api.hpp"

#include <charconv>
#include <optional>

#include "hyperkb/document.hpp"

namespace hyperkb {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";
constexpr std::uint64_t kMaxSafeInteger = (std::uint64_t{1} << 53) - 1;

json exact_integer(const BigInt& value) {
    if (value <= kMaxSafeInteger) return value.convert_to<std::uint64_t>();
    return to_decimal(value);
}

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message = {}) {
    json body = {{"response", false}, {"error", code}};
    if (!message.empty()) body["message"] = message;
    send(res, status, body);
}

json record_body(const StoreRecord& record) {
    return {{"version", record.version},
            {"updated_at", format_timestamp(record.updated_at)},
            {"statement", to_json(record.statement.definition())}};
}

std::optional<std::uint64_t> parse_version(std::string_view text) {
    // ETag-style quoting is tolerated.
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') text = text.substr(1, text.size() - 2);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string raw_query(const httplib::Request& req) {
    const auto q = req.target.find('?');
    return q == std::string::npos ? std::string() : req.target.substr(q + 1);
}

void send_store_error(httplib::Response& res, const StoreError& e) {
    switch (e.code()) {
        case StoreErrc::not_found: send_error(res, 404, "NOT_FOUND", e.what()); return;
        case StoreErrc::version_conflict: send_error(res, 409, "VERSION_CONFLICT", e.what()); return;
        case StoreErrc::validation_failed: {
            json body = {{"response", false}, {"error", "VALIDATION_FAILED"}, {"message", e.what()}};
            if (e.report()) body["violations"] = to_json(*e.report())["violations"];
            send(res, 422, body);
            return;
        }
        case StoreErrc::io: send_error(res, 500, "IO_ERROR", e.what()); return;
    }
}

}  // namespace

Query parse_query_string(std::string_view raw) {
    Query query;
    while (!raw.empty()) {
        const auto amp = raw.find('&');
        const std::string_view part = raw.substr(0, amp);
        raw = amp == std::string_view::npos ? std::string_view{} : raw.substr(amp + 1);
        if (part.empty()) continue;
        const auto eq = part.find('=');
        const std::string key(part.substr(0, eq));
        const std::string value(eq == std::string_view::npos ? std::string_view{} : part.substr(eq + 1));
        query.push_back({httplib::detail::decode_url(key, true), httplib::detail::decode_url(value, true)});
    }
    return query;
}

json response_body(const MatchResult& result) {
    struct {
        json operator()(const Answer& a) const { return {{"response", a.label}}; }
        json operator()(const NoRule&) const { return {{"response", false}}; }
        json operator()(const MissingParameter& m) const { return {{"response", m.parameter}}; }
        json operator()(const InvalidQuery& q) const { return {{"response", false}, {"error", to_string(q.reason)}}; }
    } visitor;
    return std::visit(visitor, result);
}

json metrics_body(const StatementMetrics& m) {
    const double ratio = m.coverage_ratio.convert_to<double>();
    return {{"sigma", m.sigma}, {"z", exact_integer(m.z)}, {"t", exact_integer(m.t)}, {"coverage_ratio", ratio}};
}

KnowledgeService::KnowledgeService(StatementStore& store, ServiceOptions options)
    : store_(store), options_(std::move(options)) {}

void KnowledgeService::mount(httplib::Server& server) const {
    const std::string origin = options_.cors_origin;
    server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type, If-Match");
        res.set_header("Access-Control-Expose-Headers", "ETag");
        if (origin != "*") res.set_header("Vary", "Origin");
    });
    server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    StatementStore& store = store_;

    server.Get("/api/v1/statements", [&store](const httplib::Request&, httplib::Response& res) {
        json out = json::array();
        for (const auto& s : store.list()) {
            out.push_back({{"id", s.id},
                           {"name", s.name},
                           {"parameters", s.parameter_count},
                           {"z", exact_integer(s.z)},
                           {"t", exact_integer(s.t)},
                           {"version", s.version}});
        }
        send(res, 200, out);
    });

    server.Post("/api/v1/statements/validate", [](const httplib::Request& req, httplib::Response& res) {
        try {
            send(res, 200, to_json(validate(parse_document(req.body))));
        } catch (const DocumentError& e) {
            send_error(res, 400, "MALFORMED_DOCUMENT", e.what());
        }
    });

    server.Post("/api/v1/statements", [&store](const httplib::Request& req, httplib::Response& res) {
        try {
            const auto record = store.save(parse_document(req.body), 0);
            res.set_header("ETag", "\"" + std::to_string(record.version) + "\"");
            send(res, 201, record_body(record));
        } catch (const DocumentError& e) {
            send_error(res, 400, "MALFORMED_DOCUMENT", e.what());
        } catch (const StoreError& e) {
            send_store_error(res, e);
        }
    });

    server.Get(R"(/api/v1/statements/([^/]+)/query)", [&store](const httplib::Request& req, httplib::Response& res) {
        const auto record = store.find(req.matches[1].str());
        if (!record) {
            send(res, 404, {{"response", false}, {"error", "NOT_FOUND"}});
            return;
        }
        const auto result = match(record->statement, parse_query_string(raw_query(req)));
        send(res, http_status(result), response_body(result));
    });

    server.Get(R"(/api/v1/statements/([^/]+)/metrics)", [&store](const httplib::Request& req, httplib::Response& res) {
        const auto record = store.find(req.matches[1].str());
        if (!record) {
            send_error(res, 404, "NOT_FOUND");
            return;
        }
        send(res, 200, metrics_body(compute_metrics(record->statement)));
    });

    server.Get(R"(/api/v1/statements/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
        const auto record = store.find(req.matches[1].str());
        if (!record) {
            send_error(res, 404, "NOT_FOUND");
            return;
        }
        res.set_header("ETag", "\"" + std::to_string(record->version) + "\"");
        send(res, 200, record_body(*record));
    });

    server.Put(R"(/api/v1/statements/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::uint64_t> expected;
        if (req.has_header("If-Match")) {
            expected = parse_version(req.get_header_value("If-Match"));
            if (!expected) {
                send_error(res, 400, "BAD_IF_MATCH", "If-Match must carry a version number");
                return;
            }
        }
        try {
            auto definition = parse_document(req.body);
            if (definition.id != req.matches[1].str()) {
                send_error(res, 400, "ID_MISMATCH", "document id does not match the URL");
                return;
            }
            const auto record = store.save(definition, expected);
            res.set_header("ETag", "\"" + std::to_string(record.version) + "\"");
            send(res, record.version == 1 ? 201 : 200, record_body(record));
        } catch (const DocumentError& e) {
            send_error(res, 400, "MALFORMED_DOCUMENT", e.what());
        } catch (const StoreError& e) {
            send_store_error(res, e);
        }
    });

    server.Delete(R"(/api/v1/statements/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
        try {
            store.remove(req.matches[1].str());
            send(res, 200, {{"deleted", req.matches[1].str()}});
        } catch (const StoreError& e) {
            send_store_error(res, e);
        }
    });
}

}  // namespace hyperkb
