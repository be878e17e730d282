#include "support/brute_force.hpp"

#include <ordgeo/data.hpp>
#include <ordgeo/oracle.hpp>
#include <ordgeo/ranks.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <vector>

namespace {

ordgeo::RankTable table_for(const Eigen::MatrixXd& points) {
    ordgeo::GroundTruthOracle oracle(points);
    return testsupport::full_rank_table(oracle);
}

} // namespace

TEST_CASE("rank table stores rankings and inverts them") {
    const auto points = ordgeo::generate_gaussian(20, 2, 3);
    ordgeo::GroundTruthOracle oracle(points);
    ordgeo::RankTable table(20);

    CHECK(!table.has(4));
    CHECK_THROWS_AS(table.order_for(4), ordgeo::MissingRankingError);

    ordgeo::ensure_head_sorted(table, oracle, 4);
    REQUIRE(table.has(4));
    const auto& order = table.order_for(4);
    CHECK(order.front() == 4);
    CHECK(table.rank(4, 4) == 0);
    for (std::size_t r = 0; r < order.size(); ++r) CHECK(table.rank(4, order[r]) == r);

    const auto count = oracle.ledger().unique_count();
    ordgeo::ensure_head_sorted(table, oracle, 4); // idempotent
    CHECK(oracle.ledger().unique_count() == count);
}

TEST_CASE("pairwise hull estimate matches the definition") {
    for (const std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const auto points = ordgeo::generate_ball(30, 2, seed);
        const auto table = table_for(points);
        for (const auto& [a, b] : std::vector<std::pair<std::size_t, std::size_t>>{
                 {0, 1}, {3, 17}, {29, 5}}) {
            const std::array<std::size_t, 2> pair{a, b};
            auto got = ordgeo::conv_hat(table, pair);
            auto want = testsupport::conv_hat_reference(table, pair);
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            CHECK(got == want);
        }
    }
}

TEST_CASE("pairwise hull estimate comes back ordered by the first center") {
    const auto points = ordgeo::generate_gaussian(40, 2, 8);
    const auto table = table_for(points);
    const std::array<std::size_t, 2> pair{2, 31};
    const auto members = ordgeo::conv_hat(table, pair);
    REQUIRE(members.size() >= 2);
    for (std::size_t i = 1; i < members.size(); ++i)
        CHECK(table.rank(2, members[i - 1]) < table.rank(2, members[i]));
    // Both centers always survive.
    CHECK(std::find(members.begin(), members.end(), 2ul) != members.end());
    CHECK(std::find(members.begin(), members.end(), 31ul) != members.end());
}

TEST_CASE("hull estimate for larger center sets matches the definition") {
    for (const std::uint64_t seed : {11ull, 12ull, 13ull}) {
        const auto points = ordgeo::generate_gaussian(25, 3, seed);
        const auto table = table_for(points);
        const std::vector<std::size_t> centers{0, 7, 13, 21};
        auto got = ordgeo::conv_hat(table, centers);
        auto want = testsupport::conv_hat_reference(table, centers);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("hull estimate of a singleton is the singleton") {
    const auto points = ordgeo::generate_ball(12, 2, 6);
    const auto table = table_for(points);
    const std::vector<std::size_t> single{5};
    CHECK(ordgeo::conv_hat(table, single) == std::vector<std::size_t>{5});
}

TEST_CASE("domination and above counts follow the rank table") {
    Eigen::MatrixXd points(5, 1);
    points << 0.0, 1.0, 2.0, 3.0, 10.0;
    const auto table = table_for(points);

    const std::vector<std::size_t> near_end{0, 1};
    CHECK(ordgeo::dominates(table, 2, 3, near_end)); // 2 beats 3 from both centers
    CHECK(!ordgeo::dominates(table, 3, 2, near_end));
    CHECK(!ordgeo::dominates(table, 2, 2, near_end));

    // Centers at opposite extremes pull in opposite directions, so nothing
    // between them dominates anything.
    const std::vector<std::size_t> opposite_ends{0, 4};
    CHECK(!ordgeo::dominates(table, 1, 2, opposite_ends));
    CHECK(!ordgeo::dominates(table, 2, 1, opposite_ends));

    const std::vector<std::size_t> hull{0, 1, 2};
    CHECK(ordgeo::above_count(table, 3, near_end, hull) == 3);
    CHECK(ordgeo::above_count(table, 0, near_end, hull) == 0);
}

TEST_CASE("lens membership catches the region bounded by the apex") {
    Eigen::MatrixXd points(7, 2);
    points << 0.0, 0.0, //
        4.0, 0.0,       // the two centers
        2.0, 1.5,       // apex
        2.0, 0.0,       // between the centers, under the apex
        2.0, -1.0,      // mirrored side, still inside
        1.0, 0.5,       // too far from center 1
        5.0, 0.0;       // too far from center 0
    const auto table = table_for(points);

    const std::vector<std::size_t> centers{0, 1};
    const auto lens = ordgeo::lens_members(table, centers, 2);
    CHECK(lens.apex == 2);
    CHECK(lens.members == std::vector<std::size_t>{2, 3, 4});
}

TEST_CASE("axis order consistency on a line") {
    Eigen::MatrixXd points(6, 1);
    points << 0.0, 1.0, 2.0, 3.0, 4.0, 5.0;
    const auto table = table_for(points);

    const std::array<std::size_t, 2> pair{0, 5};
    const auto axis = ordgeo::conv_hat(table, pair);
    CHECK(axis == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
    CHECK(ordgeo::is_order_consistent(table, axis, 0, 5));

    auto shuffled = axis;
    std::swap(shuffled[0], shuffled[1]);
    CHECK(!ordgeo::is_order_consistent(table, shuffled, 0, 5));
}
