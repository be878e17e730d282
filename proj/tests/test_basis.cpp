#include "support/brute_force.hpp"

#include <ordgeo/basis.hpp>
#include <ordgeo/data.hpp>
#include <ordgeo/oracle.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace {

Eigen::MatrixXd perturbed_square() {
    Eigen::MatrixXd points(4, 2);
    points << 0.0, 0.0, //
        1.0, 0.0,       //
        0.0, 0.9,       //
        1.05, 1.0;
    return points;
}

} // namespace

TEST_CASE("complete_axis walks to the far corner and collects the axis") {
    ordgeo::GroundTruthOracle oracle(perturbed_square());
    ordgeo::RankTable table(4);

    const auto axis = ordgeo::complete_axis(oracle, table, {}, 0);
    CHECK(axis.first_endpoint == 0);
    CHECK(axis.second_endpoint == 3); // the opposite corner
    CHECK(axis.members == std::vector<std::size_t>{0, 2, 1, 3});
    CHECK(ordgeo::is_order_consistent(table, axis.members, 0, 3));
}

TEST_CASE("complete_axis throws when the lens is empty") {
    Eigen::MatrixXd points(3, 1);
    points << 0.0, 1.0, 2.0;
    ordgeo::GroundTruthOracle oracle(points);
    ordgeo::RankTable table(3);
    for (std::size_t h = 0; h < 3; ++h) ordgeo::ensure_head_sorted(table, oracle, h);

    // Apex 1 sits between the prior endpoints; its lens holds only itself.
    const std::vector<std::size_t> priors{0, 2};
    CHECK_THROWS_AS(ordgeo::complete_axis(oracle, table, priors, 1),
                    ordgeo::DegenerateAxisError);
}

TEST_CASE("pick_candidate finds the object above the hull, or nothing") {
    Eigen::MatrixXd points(4, 2);
    points << 0.0, 0.0, //
        4.0, 0.0,       //
        2.0, 0.0,       //
        2.0, 3.0;       // off the segment
    ordgeo::GroundTruthOracle oracle(points);
    const auto table = testsupport::full_rank_table(oracle);

    const std::vector<std::size_t> centers{0, 1};
    const auto hull = ordgeo::conv_hat(table, centers);
    const std::vector<std::size_t> excluded{0, 1};

    const auto candidate = ordgeo::pick_candidate(table, centers, hull, excluded);
    REQUIRE(candidate.has_value());
    CHECK(*candidate == 3);

    const std::vector<std::size_t> excluded_all{0, 1, 3};
    CHECK(!ordgeo::pick_candidate(table, centers, hull, excluded_all).has_value());
}

TEST_CASE("affine independence matches the literal union-of-subhulls test") {
    for (const std::uint64_t seed : {21ull, 22ull, 23ull, 24ull}) {
        const auto points = ordgeo::generate_gaussian(18, 2, seed);
        ordgeo::GroundTruthOracle oracle(points);
        const auto table = testsupport::full_rank_table(oracle);
        const std::vector<std::vector<std::size_t>> sets{
            {0, 5, 11}, {1, 7, 13}, {2, 9, 16, 4}, {3, 8, 12, 17}};
        for (const auto& set : sets) {
            CAPTURE(seed, set);
            CHECK(ordgeo::affine_independent(table, set)
                  == testsupport::affine_independent_reference(table, set));
        }
    }
}

TEST_CASE("affine independence needs at least three points") {
    const auto points = ordgeo::generate_ball(6, 2, 1);
    ordgeo::GroundTruthOracle oracle(points);
    const auto table = testsupport::full_rank_table(oracle);
    const std::vector<std::size_t> pair{0, 1};
    CHECK_THROWS_AS(ordgeo::affine_independent(table, pair), ordgeo::InvalidQueryError);
}

TEST_CASE("farthest-rank traversal spreads along a line") {
    Eigen::MatrixXd points(10, 1);
    for (int i = 0; i < 10; ++i) points(i, 0) = i;
    ordgeo::GroundTruthOracle oracle(points);
    ordgeo::RankTable table(10);

    const auto selected = ordgeo::frft_endpoints(oracle, table, 3, 3);
    REQUIRE(selected.size() == 3);
    CHECK(selected[0] == 9); // farthest from the start
    CHECK(selected[1] == 0); // opposite extreme
    CHECK(selected[2] == 4); // near the middle
}

TEST_CASE("a straight line yields exactly one axis") {
    Eigen::MatrixXd points(24, 1);
    for (int i = 0; i < 24; ++i) points(i, 0) = 0.37 * i;
    ordgeo::GroundTruthOracle oracle(points);

    ordgeo::BasisConfig config;
    config.start_point = 5;
    const auto [basis, ranks] = ordgeo::choose_basis(oracle, config);

    CHECK(basis.dimension_estimate() == 1);
    REQUIRE(basis.axes.size() == 1);
    CHECK(basis.axes[0].members.size() == 24); // the whole line is on the axis
    CHECK(basis.affine_set.size() == 2);       // no candidate ever rose above it
    const auto ends = std::minmax(basis.axes[0].first_endpoint, basis.axes[0].second_endpoint);
    CHECK(ends.first == 0);
    CHECK(ends.second == 23);
}

TEST_CASE("a circle yields one axis") {
    // Points on a circle: every chord's hull estimate hugs the shorter arc,
    // and no object clears it from both endpoints at once.
    const auto points = ordgeo::generate_sphere(80, 2, 31);
    ordgeo::GroundTruthOracle oracle(points);
    const auto [basis, ranks] = ordgeo::choose_basis(oracle, {});
    CHECK(basis.dimension_estimate() == 1);
}

TEST_CASE("dimension estimates never exceed the true dimension") {
    for (const std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const auto points = ordgeo::generate_ball(120, 2, seed);
        ordgeo::GroundTruthOracle oracle(points);
        ordgeo::BasisConfig config;
        config.seed = seed;
        const auto [basis, ranks] = ordgeo::choose_basis(oracle, config);
        CAPTURE(seed);
        CHECK(basis.dimension_estimate() >= 1);
        CHECK(basis.dimension_estimate() <= 2);
    }
}

TEST_CASE("basis discovery is deterministic for a fixed seed") {
    const auto points = ordgeo::generate_gaussian(60, 2, 17);

    ordgeo::GroundTruthOracle first_oracle(points);
    ordgeo::GroundTruthOracle second_oracle(points);
    ordgeo::BasisConfig config;
    config.seed = 99;
    const auto [a, a_ranks] = ordgeo::choose_basis(first_oracle, config);
    const auto [b, b_ranks] = ordgeo::choose_basis(second_oracle, config);

    CHECK(a.affine_set == b.affine_set);
    CHECK(a.comparisons_used == b.comparisons_used);
    REQUIRE(a.axes.size() == b.axes.size());
    for (std::size_t i = 0; i < a.axes.size(); ++i) {
        CHECK(a.axes[i].first_endpoint == b.axes[i].first_endpoint);
        CHECK(a.axes[i].second_endpoint == b.axes[i].second_endpoint);
        CHECK(a.axes[i].members == b.axes[i].members);
    }
}

TEST_CASE("start_point override pins the first endpoint") {
    const auto points = ordgeo::generate_ball(40, 2, 12);
    ordgeo::GroundTruthOracle probe(points);
    const std::size_t expected_first = ordgeo::farthest_from(probe, 7);

    ordgeo::GroundTruthOracle oracle(points);
    ordgeo::BasisConfig config;
    config.start_point = 7;
    const auto [basis, ranks] = ordgeo::choose_basis(oracle, config);
    REQUIRE(!basis.axes.empty());
    CHECK(basis.axes[0].first_endpoint == expected_first);
}

TEST_CASE("alternative candidate rules still produce sound bases") {
    const auto points = ordgeo::generate_ball(60, 2, 77);

    for (const auto rule : {ordgeo::CandidateRule::TwoCenter, ordgeo::CandidateRule::Literal}) {
        for (const auto source : {ordgeo::HullSource::AffineSet, ordgeo::HullSource::AllEndpoints}) {
            ordgeo::GroundTruthOracle oracle(points);
            ordgeo::BasisConfig config;
            config.candidate_rule = rule;
            config.hull_source = source;
            const auto [basis, ranks] = ordgeo::choose_basis(oracle, config);
            CAPTURE(static_cast<int>(rule), static_cast<int>(source));
            CHECK(basis.dimension_estimate() >= 1);
            CHECK(basis.comparisons_used > 0);
            for (const auto& axis : basis.axes)
                CHECK(ordgeo::is_order_consistent(ranks, axis.members, axis.first_endpoint,
                                                  axis.second_endpoint));
        }
    }
}

TEST_CASE("farthest-rank strategy also recovers a planar basis") {
    const auto points = ordgeo::generate_ball(100, 2, 41);
    ordgeo::GroundTruthOracle oracle(points);
    ordgeo::BasisConfig config;
    config.strategy = ordgeo::EndpointStrategy::FarthestRank;
    const auto [basis, ranks] = ordgeo::choose_basis(oracle, config);
    CHECK(basis.dimension_estimate() >= 1);
    CHECK(basis.dimension_estimate() <= 2);
}

TEST_CASE("comparison usage stays within the sorting budget") {
    const std::size_t n = 200;
    const auto points = ordgeo::generate_ball(n, 2, 3);
    ordgeo::GroundTruthOracle oracle(points);
    const auto [basis, ranks] = ordgeo::choose_basis(oracle, {});
    const double lg = std::ceil(std::log2(static_cast<double>(n)));
    const double budget = 3.0 * static_cast<double>(n) * lg
                          * static_cast<double>(basis.dimension_estimate());
    CHECK(static_cast<double>(basis.comparisons_used) <= budget);
}
