#include "support/brute_force.hpp"

#include <ordgeo/data.hpp>
#include <ordgeo/oracle.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

TEST_CASE("ground truth oracle answers by squared distance") {
    Eigen::MatrixXd points(4, 2);
    points << 0, 0, //
        1, 0,       //
        3, 0,       //
        0, 2;
    ordgeo::GroundTruthOracle oracle(points);

    CHECK(oracle.answer({0, 1, 2}));  // 1 closer than 9
    CHECK(!oracle.answer({0, 2, 1})); // mirrored
    CHECK(oracle.answer({0, 1, 3}));  // 1 closer than 4
    CHECK(!oracle.answer({2, 3, 1})); // 13 vs 4
}

TEST_CASE("distance ties resolve toward the smaller index") {
    Eigen::MatrixXd points(3, 1);
    points << 0, -1, 1; // objects 1 and 2 equidistant from 0
    ordgeo::GroundTruthOracle oracle(points);
    CHECK(oracle.answer({0, 1, 2}));
    CHECK(!oracle.answer({0, 2, 1}));
}

TEST_CASE("malformed queries are rejected") {
    Eigen::MatrixXd points = ordgeo::generate_ball(5, 2, 1);
    ordgeo::GroundTruthOracle oracle(points);
    CHECK_THROWS_AS(oracle.answer({0, 1, 1}), ordgeo::InvalidQueryError);
    CHECK_THROWS_AS(oracle.answer({2, 2, 3}), ordgeo::InvalidQueryError);
    CHECK_THROWS_AS(oracle.answer({0, 1, 5}), ordgeo::InvalidQueryError);
    CHECK_THROWS_AS(oracle.answer({7, 1, 2}), ordgeo::InvalidQueryError);
}

TEST_CASE("ledger memoizes queries and their mirrors") {
    Eigen::MatrixXd points = ordgeo::generate_ball(10, 2, 2);
    ordgeo::GroundTruthOracle oracle(points);

    const bool first = oracle.answer({0, 3, 7});
    CHECK(oracle.ledger().unique_count() == 1);
    CHECK(oracle.ledger().total_calls() == 1);

    CHECK(oracle.answer({0, 3, 7}) == first);
    CHECK(oracle.answer({0, 7, 3}) == !first); // mirror served from cache
    CHECK(oracle.ledger().unique_count() == 1);
    CHECK(oracle.ledger().total_calls() == 3);

    oracle.answer({1, 3, 7});
    CHECK(oracle.ledger().unique_count() == 2);
}

TEST_CASE("sorting a head reproduces the true distance ranking") {
    const auto points = ordgeo::generate_gaussian(40, 3, 5);
    ordgeo::GroundTruthOracle oracle(points);
    for (const std::size_t head : {0ul, 7ul, 39ul}) {
        const auto order = ordgeo::sort_for_head(oracle, head);
        const auto expected = testsupport::ranking_by_distance(points, head);
        REQUIRE(order.size() == expected.size());
        CHECK(order == expected);
        CHECK(order.front() == head);
    }
}

TEST_CASE("sorting stays within the merge sort comparison budget") {
    const std::size_t n = 128;
    const auto points = ordgeo::generate_ball(n, 2, 9);
    ordgeo::GroundTruthOracle oracle(points);
    ordgeo::sort_for_head(oracle, 0);
    const auto m = static_cast<double>(n - 1);
    const double bound = m * std::ceil(std::log2(m));
    CHECK(static_cast<double>(oracle.ledger().unique_count()) <= bound);
}

TEST_CASE("farthest point search uses exactly n - 2 fresh comparisons") {
    const std::size_t n = 33;
    const auto points = ordgeo::generate_gaussian(n, 2, 4);
    ordgeo::GroundTruthOracle oracle(points);
    const std::size_t far = ordgeo::farthest_from(oracle, 5);
    CHECK(oracle.ledger().unique_count() == n - 2);

    // Cross-check against true distances.
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 5) continue;
        const double d = (points.row(static_cast<Eigen::Index>(i)) - points.row(5)).squaredNorm();
        if (d > best_d) { best_d = d; best = i; }
    }
    CHECK(far == best);
}
