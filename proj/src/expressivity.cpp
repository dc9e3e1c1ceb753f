#include "hyperkb/expressivity.hpp"

#include <stdexcept>

namespace hyperkb {

std::vector<std::uint64_t> sigma(const Statement& statement) {
    std::vector<std::uint64_t> totals(statement.parameters().size(), 0);
    for (const auto& v : statement.parameter_vertices()) totals[v.parameter] += v.keywords.size();
    return totals;
}

BigInt expressivity_from_sigma(std::span<const std::uint64_t> sigma) {
    // Expanding prod(1 + c) yields one product term per subset; drop the
    // empty subset's 1.
    BigInt product = 1;
    for (auto c : sigma) product *= BigInt(c) + 1;
    return product - 1;
}

BigInt statement_expressivity(const Statement& statement) {
    const auto totals = sigma(statement);
    return expressivity_from_sigma(totals);
}

BigInt total_questions_covered(const Statement& statement) {
    const auto& pvs = statement.parameter_vertices();
    BigInt total = 0;
    for (const auto& edge : statement.edges()) {
        BigInt term = 1;
        for (auto v : edge.parameter_vertices) term *= pvs[v].keywords.size();
        total += term;
    }
    return total;
}

StatementMetrics compute_metrics(const Statement& statement) {
    StatementMetrics m;
    m.sigma = sigma(statement);
    m.z = expressivity_from_sigma(m.sigma);
    m.t = total_questions_covered(statement);
    m.coverage_ratio = m.z == 0 ? Rational(0) : Rational(m.t, m.z);
    return m;
}

std::vector<ScenarioRow> expressivity_scenario(const ScenarioSpec& spec) {
    if (spec.param_count == 0 || spec.vertices_per_param == 0 || spec.response_count == 0) {
        throw std::invalid_argument("scenario counts must be at least 1");
    }
    if (spec.k_min == 0 || spec.k_min > spec.k_max) {
        throw std::invalid_argument("keyword range must be a non-empty range starting at 1 or more");
    }
    std::vector<ScenarioRow> rows;
    rows.reserve(spec.k_max - spec.k_min + 1);
    for (auto k = spec.k_min; k <= spec.k_max; ++k) {
        const std::vector<std::uint64_t> s(spec.param_count, spec.vertices_per_param * k);
        rows.push_back({k, expressivity_from_sigma(s)});
    }
    return rows;
}

std::string to_decimal(const BigInt& value) {
    return value.str();
}

}  // namespace hyperkb
