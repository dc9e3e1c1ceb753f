#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperkb/expressivity.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_statements.hpp"

using namespace hyperkb;
using namespace hyperkb::testing;

TEST_CASE("sigma") {
    CHECK(sigma(toy()) == std::vector<std::uint64_t>{6, 4});
    CHECK(sigma(build_statement_or_throw(minimal_definition())) == std::vector<std::uint64_t>{1});

    // Equal totals are kept as separate entries.
    StatementDefinition def;
    def.id = "equal";
    def.name = "equal";
    def.parameters = {"aa", "bb"};
    def.vertices = {{"a1", VertexKind::parameter, "aa", {"x1", "x2", "x3"}, ""},
                    {"b1", VertexKind::parameter, "bb", {"y1", "y2"}, ""},
                    {"b2", VertexKind::parameter, "bb", {"y3"}, ""},
                    {"r1", VertexKind::response, "", {}, "ok"}};
    const Statement s = build_statement_or_throw(def);
    CHECK(sigma(s) == std::vector<std::uint64_t>{3, 3});
    // 3 + 3 + 9; a collapsed {3} would give 3.
    CHECK(statement_expressivity(s) == 15);
    CHECK(count_well_formed_queries(def) == 15);
}

TEST_CASE("statement expressivity") {
    CHECK(statement_expressivity(toy()) == 34);
    const std::uint64_t one[] = {1};
    CHECK(expressivity_from_sigma(one) == 1);
    const std::uint64_t fig[] = {20, 20};
    CHECK(expressivity_from_sigma(fig) == 440);
    CHECK(expressivity_from_sigma(std::span<const std::uint64_t>{}) == 0);
}

TEST_CASE("z matches the power-set sum and brute-force query enumeration") {
    const std::uint64_t toy_sigma[] = {6, 4};
    CHECK(power_set_sum(toy_sigma) == 34);

    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; ++i) {
        const auto def = random_definition(rng, "s" + std::to_string(i));
        const Statement s = build_statement_or_throw(def);
        const auto sig = sigma(s);
        const BigInt z = statement_expressivity(s);
        CHECK(z == power_set_sum(sig));
        CHECK(z == count_well_formed_queries(def));
    }
    // Longer sigma vectors, power-set route only.
    for (int i = 0; i < 100; ++i) {
        std::vector<std::uint64_t> sig(static_cast<std::size_t>(uniform(rng, 0, 12)));
        for (auto& c : sig) c = static_cast<std::uint64_t>(uniform(rng, 1, 40));
        CHECK(expressivity_from_sigma(sig) == power_set_sum(sig));
    }
}

TEST_CASE("z is exact beyond 64 bits") {
    // 30 parameters of 1000 keywords: 1001^30 - 1.
    const std::vector<std::uint64_t> sig(30, 1000);
    BigInt expected = 1;
    for (int i = 0; i < 30; ++i) expected *= 1001;
    expected -= 1;
    CHECK(expressivity_from_sigma(sig) == expected);
    CHECK(expressivity_from_sigma(sig) > BigInt(std::numeric_limits<std::uint64_t>::max()));
    CHECK(to_decimal(expressivity_from_sigma(sig)).size() == 91);
}

TEST_CASE("total questions covered") {
    CHECK(total_questions_covered(toy()) == 13);

    auto def = toy_definition();
    def.edges.clear();
    CHECK(total_questions_covered(build_statement_or_throw(def)) == 0);

    auto removed = toy_definition();
    remove_edge(removed, "e5");
    const Statement s = build_statement_or_throw(removed);
    CHECK(total_questions_covered(s) == 7);
    CHECK(exact_coverage_total(s) == 7);
}

TEST_CASE("t matches the exact-coverage oracle, and t <= z") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 200; ++i) {
        const Statement s = build_statement_or_throw(random_definition(rng, "s" + std::to_string(i)));
        const auto m = compute_metrics(s);
        CHECK(m.t == exact_coverage_total(s));
        CHECK(m.t <= m.z);
        CHECK(m.z > 0);
    }
}

TEST_CASE("metrics bundle and coverage ratio") {
    const auto m = compute_metrics(toy());
    CHECK(m.sigma == std::vector<std::uint64_t>{6, 4});
    CHECK(m.z == 34);
    CHECK(m.t == 13);
    CHECK(m.coverage_ratio == Rational(13, 34));

    const auto minimal = compute_metrics(build_statement_or_throw(minimal_definition()));
    CHECK(minimal.z == 1);
    CHECK(minimal.t == 1);
    CHECK(minimal.coverage_ratio == 1);
}

TEST_CASE("monotonicity: more keywords never lower z, more rules never lower t") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 100; ++i) {
        auto def = random_definition(rng, "s" + std::to_string(i));
        const auto before = compute_metrics(build_statement_or_throw(def));

        auto more_keywords = def;
        auto& v = more_keywords.vertices.front();
        v.keywords.push_back(v.id + "extra");
        CHECK(statement_expressivity(build_statement_or_throw(more_keywords)) >= before.z);
        CHECK(statement_expressivity(build_statement_or_throw(more_keywords)) > before.z);

        auto more_edges = def;
        more_edges.edges.push_back({"extra", {v.id, "r0"}});
        if (auto built = build_statement(more_edges); std::holds_alternative<Statement>(built)) {
            CHECK(total_questions_covered(std::get<Statement>(built)) >= before.t);
        }
    }
}

TEST_CASE("expressivity scenarios") {
    auto rows = expressivity_scenario({2, 2, 3, 1, 1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].z == 8);
    CHECK(expressivity_scenario({2, 3, 3, 1, 1})[0].z == 15);
    CHECK(expressivity_scenario({1, 1, 1, 1, 1})[0].z == 1);

    rows = expressivity_scenario({2, 2, 3, 1, 2});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].keywords_per_vertex == 2);
    CHECK(rows[1].z == 24);

    CHECK_THROWS_AS(expressivity_scenario({2, 2, 3, 3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(expressivity_scenario({0, 2, 3, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(expressivity_scenario({2, 0, 3, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(expressivity_scenario({2, 2, 0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(expressivity_scenario({2, 2, 3, 0, 2}), std::invalid_argument);
}

TEST_CASE("scenario growth for two parameters") {
    for (std::uint64_t v : {2, 3, 4}) {
        const auto rows = expressivity_scenario({2, v, 3, 1, 50});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].z > rows[i - 1].z);
            // z(k)/k strictly increasing, compared without division.
            CHECK(rows[i].z * rows[i - 1].keywords_per_vertex > rows[i - 1].z * rows[i].keywords_per_vertex);
        }
    }
}
