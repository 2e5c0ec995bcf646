#include "doctest.h"

#include "helpers.hpp"
#include "oracles.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/rado.hpp"

using namespace wmlab;
using testing::M;
using testing::V;

namespace {

std::vector<RationalVector> columns_of(const RationalMatrix& m) {
    std::vector<RationalVector> cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.column(c));
    return cols;
}

} // namespace

TEST_CASE("columns_condition examples") {
    const auto schur = columns_condition(M({{1, 1, -1}}));
    REQUIRE(schur.has_value());
    CHECK(schur->blocks == std::vector<std::vector<std::size_t>>{{0, 2}, {1}});
    CHECK(schur->level() == 2);
    CHECK(check_level_partition(M({{1, 1, -1}}), *schur));

    CHECK_FALSE(columns_condition(M({{1, 1, -3}})).has_value());

    const auto ap = columns_condition(M({{1, -2, 1}}));
    REQUIRE(ap.has_value());
    CHECK(ap->blocks == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
    CHECK(ap->level() == 1);
    CHECK(ap->coefficients.empty());
}

TEST_CASE("decide_rado examples") {
    CHECK(decide_rado(M({{1, 1, -1}}), V({0})));
    CHECK_FALSE(decide_rado(M({{1, 1, -3}}), V({0})));
    CHECK_FALSE(decide_rado(M({{1, -1}}), V({3})));
    CHECK_THROWS_AS(decide_rado(M({{1, -1}}), V({0, 0})), InputError);
}

TEST_CASE("column limit") {
    CHECK_THROWS_AS(columns_condition(RationalMatrix(1, kMaxRadoColumns + 1)), InputError);
}

TEST_CASE("level partition checker rejects broken witnesses") {
    const auto m = M({{1, 1, -1}});
    LevelPartition p{{{0, 2}, {1}}, {V({1, 0, 0})}};
    CHECK(check_level_partition(m, p));
    auto wrong_coeff = p;
    wrong_coeff.coefficients = {V({2, 0, 0})};
    CHECK_FALSE(check_level_partition(m, wrong_coeff));
    LevelPartition not_zero{{{0, 1}, {2}}, {V({-1, 0, 0})}};
    CHECK_FALSE(check_level_partition(m, not_zero));
    LevelPartition missing{{{0, 2}}, {}};
    CHECK_FALSE(check_level_partition(m, missing));
}

TEST_CASE("backtracking agrees with ordered-partition enumeration") {
    std::mt19937_64 rng(31337);
    int present = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto q = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
        const auto p = static_cast<std::size_t>(testing::uniform(rng, 1, 2));
        const auto m = testing::random_matrix(rng, p, q, -2, 2);
        const auto fast = columns_condition(m);
        CHECK(fast.has_value() == oracle::columns_condition(columns_of(m)));
        if (fast) {
            ++present;
            CHECK(check_level_partition(m, *fast));
        }
    }
    CHECK(present > 10);
}
