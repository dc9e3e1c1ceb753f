// hyperkb: validate, query and serve contract statements.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperkb/api.hpp"
#include "hyperkb/chat.hpp"
#include "hyperkb/document.hpp"
#include "hyperkb/expressivity.hpp"
#include "hyperkb/matcher.hpp"
#include "hyperkb/statement.hpp"
#include "hyperkb/store.hpp"

namespace {

using namespace hyperkb;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsageError = 2;

// Thrown from helpers to end the program with a given exit code.
struct Exit {
    int code;
};

StatementDefinition read_or_exit(const std::string& path) {
    try {
        return read_document_file(path);
    } catch (const DocumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        throw Exit{kUsageError};
    }
}

void print_violations(const ValidationReport& report, std::ostream& out) {
    for (const auto& v : report.violations()) {
        out << (v.severity() == Severity::error ? "" : "warning: ") << to_string(v.code) << ": " << v.message << "\n";
    }
}

Statement statement_or_exit(const std::string& path) {
    auto built = build_statement(read_or_exit(path));
    if (auto* report = std::get_if<ValidationReport>(&built)) {
        std::cerr << "error: " << path << " is not a valid statement\n";
        print_violations(*report, std::cerr);
        throw Exit{kDomainFailure};
    }
    return std::get<Statement>(std::move(built));
}

int cmd_validate(const std::string& path) {
    const auto report = validate(read_or_exit(path));
    if (!report.ok()) {
        print_violations(report, std::cout);
        return kDomainFailure;
    }
    std::cout << "valid\n";
    print_violations(report, std::cout);
    return kOk;
}

int cmd_query(const std::string& path, const std::vector<std::string>& params) {
    const Statement statement = statement_or_exit(path);
    Query query;
    for (const auto& p : params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --param expects name=value, got \"" << p << "\"\n";
            return kUsageError;
        }
        query.push_back({p.substr(0, eq), p.substr(eq + 1)});
    }
    const MatchResult result = match(statement, query);
    std::cout << http_status(result) << " " << tag_name(result) << " ";
    std::visit(
        [](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Answer>) {
                std::cout << r.label;
            } else if constexpr (std::is_same_v<T, NoRule>) {
                std::cout << "false";
            } else if constexpr (std::is_same_v<T, MissingParameter>) {
                std::cout << r.parameter;
            } else {
                std::cout << to_string(r.reason) << " " << r.detail;
            }
        },
        result);
    std::cout << "\n";
    return std::holds_alternative<Answer>(result) ? kOk : kDomainFailure;
}

int cmd_metrics(const std::string& path) {
    const auto m = compute_metrics(statement_or_exit(path));
    std::cout << "sigma=[";
    for (std::size_t i = 0; i < m.sigma.size(); ++i) std::cout << (i ? "," : "") << m.sigma[i];
    std::cout << "] z=" << m.z << " t=" << m.t << " coverage=" << m.coverage_ratio.convert_to<double>() << "\n";
    return kOk;
}

int cmd_scenario(std::uint64_t params, const std::vector<std::uint64_t>& vertices, std::uint64_t responses,
                 std::uint64_t min_k, std::uint64_t max_k, const std::vector<std::uint64_t>& sigma_values) {
    if (!sigma_values.empty()) {
        std::cout << expressivity_from_sigma(sigma_values) << "\n";
        return kOk;
    }
    if (vertices.empty()) {
        std::cerr << "error: --vertices or --sigma is required\n";
        return kUsageError;
    }
    try {
        const bool several = vertices.size() > 1;
        std::cout << (several ? "v,k,z" : "k,z") << "\n";
        for (auto v : vertices) {
            for (const auto& row : expressivity_scenario({params, v, responses, min_k, max_k})) {
                if (several) std::cout << v << ",";
                std::cout << row.keywords_per_vertex << "," << row.z << "\n";
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kOk;
}

int cmd_chat(const std::string& path) {
    const Statement statement = statement_or_exit(path);
    ChatSession session(statement);
    std::string line;
    while (std::getline(std::cin, line)) {
        std::cout << "USER: " << line << "\n";
        std::cout << "BOT: " << session.respond(line).text << "\n" << std::flush;
    }
    return kOk;
}

int cmd_serve(const std::string& addr, const std::string& store_dir, const std::string& cors_origin) {
    const auto colon = addr.rfind(':');
    int port = -1;
    if (colon != std::string::npos) {
        try {
            port = std::stoi(addr.substr(colon + 1));
        } catch (const std::exception&) {
        }
    }
    if (colon == std::string::npos || port < 0 || port > 65535) {
        std::cerr << "error: --addr must be host:port, got \"" << addr << "\"\n";
        return kUsageError;
    }
    const std::string host = addr.substr(0, colon);

    std::unique_ptr<StatementStore> store;
    try {
        store = std::make_unique<StatementStore>(store_dir);
    } catch (const StoreError& e) {
        std::cerr << "error: cannot open store: " << e.what() << "\n";
        return kDomainFailure;
    }

    httplib::Server server;
    // SO_REUSEADDR only, no port sharing.
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    KnowledgeService service(*store, {cors_origin});
    service.mount(server);
    if (!server.bind_to_port(host, port)) {
        std::cerr << "error: cannot bind to " << addr << "\n";
        return kDomainFailure;
    }
    std::cerr << "listening on " << addr << " (store " << store_dir << ")\n";
    return server.listen_after_bind() ? kOk : kDomainFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contract statement knowledge service"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> params;

    auto* validate_cmd = app.add_subcommand("validate", "Check a statement document");
    validate_cmd->add_option("file", file, "Statement document")->required();

    auto* query_cmd = app.add_subcommand("query", "Match parameter values against a statement");
    query_cmd->add_option("file", file, "Statement document")->required();
    query_cmd->add_option("--param,-p", params, "name=value, repeatable");

    auto* metrics_cmd = app.add_subcommand("metrics", "Print sigma, z, t and coverage");
    metrics_cmd->add_option("file", file, "Statement document")->required();

    std::uint64_t scenario_params = 2;
    std::vector<std::uint64_t> scenario_vertices;
    std::uint64_t scenario_responses = 3;
    std::uint64_t min_k = 1;
    std::uint64_t max_k = 50;
    std::vector<std::uint64_t> sigma_values;
    auto* scenario_cmd = app.add_subcommand("scenario", "Emit z over keywords per vertex as CSV");
    scenario_cmd->add_option("--params", scenario_params, "Number of parameters")->check(CLI::PositiveNumber);
    scenario_cmd->add_option("--vertices", scenario_vertices, "Vertices per parameter, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    scenario_cmd->add_option("--responses", scenario_responses, "Number of response vertices")
        ->check(CLI::PositiveNumber);
    scenario_cmd->add_option("--min-k", min_k, "Smallest keywords-per-vertex value")->check(CLI::PositiveNumber);
    scenario_cmd->add_option("--max-k", max_k, "Largest keywords-per-vertex value")->check(CLI::PositiveNumber);
    scenario_cmd->add_option("--sigma", sigma_values, "Evaluate z for explicit per-parameter totals")
        ->delimiter(',');

    auto* chat_cmd = app.add_subcommand("chat", "Converse with a statement on stdin/stdout");
    chat_cmd->add_option("file", file, "Statement document")->required();

    std::string addr = "127.0.0.1:8080";
    std::string store_dir = "statements";
    std::string cors_origin = "*";
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP knowledge service");
    serve_cmd->add_option("--addr", addr, "host:port to listen on")->envname("HYPERKB_ADDR");
    serve_cmd->add_option("--store", store_dir, "Statement store directory")->envname("HYPERKB_STORE");
    serve_cmd->add_option("--cors-origin", cors_origin, "Allowed CORS origin")->envname("HYPERKB_CORS_ORIGIN");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsageError;
    }

    try {
        if (*validate_cmd) return cmd_validate(file);
        if (*query_cmd) return cmd_query(file, params);
        if (*metrics_cmd) return cmd_metrics(file);
        if (*scenario_cmd) {
            return cmd_scenario(scenario_params, scenario_vertices, scenario_responses, min_k, max_k, sigma_values);
        }
        if (*chat_cmd) return cmd_chat(file);
        if (*serve_cmd) return cmd_serve(addr, store_dir, cors_origin);
    } catch (const Exit& e) {
        return e.code;
    }
    return kUsageError;
}
