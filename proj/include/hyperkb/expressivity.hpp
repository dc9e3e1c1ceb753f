#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperkb/statement.hpp"

namespace hyperkb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct StatementMetrics {
    std::vector<std::uint64_t> sigma;  // one entry per parameter, declaration order
    BigInt z;                          // maximum static questions replaced
    BigInt t;                          // questions the existing rules answer
    Rational coverage_ratio;           // t / z, or 0 when z == 0
};

/// Per-parameter keyword totals, duplicates kept.
std::vector<std::uint64_t> sigma(const Statement& statement);

/// Sum over every non-empty sub-multiset of `sigma` of the product of its
/// elements. The empty subset is not counted.
BigInt expressivity_from_sigma(std::span<const std::uint64_t> sigma);

BigInt statement_expressivity(const Statement& statement);

/// Sum over rules of the product of their parameter vertices' keyword counts.
BigInt total_questions_covered(const Statement& statement);

StatementMetrics compute_metrics(const Statement& statement);

/// Synthetic statement shape: `param_count` parameters with
/// `vertices_per_param` vertices each, every vertex holding #k keywords for
/// #k in [k_min, k_max]. `response_count` only labels the scenario.
struct ScenarioSpec {
    std::uint64_t param_count = 2;
    std::uint64_t vertices_per_param = 2;
    std::uint64_t response_count = 3;
    std::uint64_t k_min = 1;
    std::uint64_t k_max = 50;
};

struct ScenarioRow {
    std::uint64_t keywords_per_vertex;
    BigInt z;
};

/// z for each #k of the scenario. Throws std::invalid_argument on zero counts
/// or an empty range.
std::vector<ScenarioRow> expressivity_scenario(const ScenarioSpec& spec);

/// Decimal rendering of a metric.
std::string to_decimal(const BigInt& value);

}  // namespace hyperkb
