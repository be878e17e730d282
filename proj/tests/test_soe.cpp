#include "support/brute_force.hpp"

#include <ordgeo/data.hpp>
#include <ordgeo/refine.hpp>
#include <ordgeo/soe.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace {

/// Triples of a unit square that force two dimensions: both diagonals must
/// exceed every side, which no arrangement on a line can satisfy.
ordgeo::TripleSet square_triples() {
    ordgeo::TripleSet triples(4);
    triples.add({0, 1, 2}); // sides closer than the diagonal at every corner
    triples.add({0, 3, 2});
    triples.add({1, 0, 3});
    triples.add({1, 2, 3});
    triples.add({2, 1, 0});
    triples.add({2, 3, 0});
    triples.add({3, 0, 1});
    triples.add({3, 2, 1});
    return triples;
}

} // namespace

TEST_CASE("hinge loss charges exactly the violated triples") {
    Eigen::MatrixXd positions(3, 1);
    positions << 0.0, 1.0, 3.0;

    std::vector<ordgeo::Triple> satisfied{{0, 1, 2}};
    CHECK(ordgeo::soe_loss(positions, satisfied, 0.1) == 0.0);

    std::vector<ordgeo::Triple> violated{{1, 2, 0}}; // claims 2 nearer to 1 than 0
    // d(1,2) = 2, d(1,0) = 1: hinge = 2 + 0.1 - 1 = 1.1, squared = 1.21.
    CHECK(ordgeo::soe_loss(positions, violated, 0.1) == Catch::Approx(1.21).epsilon(1e-12));

    std::vector<ordgeo::Triple> both{{0, 1, 2}, {1, 2, 0}};
    CHECK(ordgeo::soe_loss(positions, both, 0.1) == Catch::Approx(1.21).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central differences") {
    for (const std::uint64_t seed : {61ull, 62ull, 63ull, 64ull}) {
        const std::size_t n = 10;
        const auto positions = ordgeo::generate_gaussian(n, 2, seed);

        ordgeo::TripleSet triples(n);
        ordgeo::RandomStream stream(seed, "grad-test-triples");
        while (triples.size() < 30) {
            const std::size_t h = stream.next_index(n);
            const std::size_t c = stream.next_index(n);
            const std::size_t f = stream.next_index(n);
            if (h == c || h == f || c == f) continue;
            triples.add({h, c, f});
        }

        const auto analytic = ordgeo::soe_gradient(positions, triples.items(), 0.1);
        const auto numeric = testsupport::finite_difference_gradient(positions, triples, 0.1);
        const double scale = std::max(1.0, numeric.norm());
        CAPTURE(seed);
        CHECK((analytic - numeric).norm() / scale < 1e-6);
    }
}

TEST_CASE("gradient is zero on slack configurations") {
    Eigen::MatrixXd positions(3, 2);
    positions << 0.0, 0.0, 1.0, 0.0, 5.0, 0.0;
    std::vector<ordgeo::Triple> triples{{0, 1, 2}};
    CHECK(ordgeo::soe_gradient(positions, triples, 0.1).norm() == 0.0);
}

TEST_CASE("a line instance converges to an order-preserving fit") {
    const std::size_t n = 8;
    Eigen::MatrixXd points(static_cast<Eigen::Index>(n), 1);
    for (std::size_t i = 0; i < n; ++i) points(static_cast<Eigen::Index>(i), 0) = static_cast<double>(i);
    ordgeo::GroundTruthOracle oracle(points);
    const auto table = testsupport::full_rank_table(oracle);
    const auto triples = ordgeo::basis_triples(table);

    ordgeo::SoeConfig config;
    config.dim = 1;
    config.restarts = 8;
    config.seed = 5;
    config.max_iterations = 30000; // stretching from the unit-box start is slow in 1D
    const auto fit = ordgeo::soe_fit(n, triples, config);

    CHECK(fit.converged);
    CHECK(fit.final_loss < config.loss_threshold);
    REQUIRE(fit.positions.rows() == static_cast<Eigen::Index>(n));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fit.positions(static_cast<Eigen::Index>(a), 0)
               < fit.positions(static_cast<Eigen::Index>(b), 0);
    });
    std::vector<std::size_t> forward(n), backward(n);
    std::iota(forward.begin(), forward.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) backward[i] = n - 1 - i;
    const bool ordered = (order == forward) || (order == backward);
    CHECK(ordered);
}

TEST_CASE("results are identical across thread counts") {
    const std::size_t n = 12;
    const auto points = ordgeo::generate_gaussian(n, 2, 71);
    ordgeo::GroundTruthOracle oracle(points);
    const auto table = testsupport::full_rank_table(oracle);
    const auto triples = ordgeo::basis_triples(table);

    ordgeo::SoeConfig config;
    config.dim = 2;
    config.restarts = 6;
    config.seed = 3;
    config.max_iterations = 120;

    config.threads = 1;
    const auto serial = ordgeo::soe_fit(n, triples, config);
    config.threads = 4;
    const auto parallel = ordgeo::soe_fit(n, triples, config);

    CHECK(serial.best_restart == parallel.best_restart);
    CHECK(serial.final_loss == parallel.final_loss);
    CHECK((serial.positions - parallel.positions).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dimension doubling rescues an infeasible flat fit") {
    const auto triples = square_triples();

    ordgeo::SoeConfig config;
    config.dim = 1;
    config.restarts = 6;
    config.seed = 9;

    const auto flat = ordgeo::soe_fit(4, triples, config);
    CHECK(!flat.converged); // both diagonals cannot dominate on a line

    const auto doubled = ordgeo::soe_fit_doubling(4, triples, config);
    CHECK(doubled.dimension_doubled);
    CHECK(doubled.positions.cols() == 2);
    CHECK(doubled.converged);

    // A converged fit really is a square-like layout: diagonals longest.
    const auto& p = doubled.positions;
    const auto dist = [&](int a, int b) { return (p.row(a) - p.row(b)).norm(); };
    CHECK(dist(0, 2) > dist(0, 1));
    CHECK(dist(0, 2) > dist(0, 3));
    CHECK(dist(1, 3) > dist(1, 0));
    CHECK(dist(1, 3) > dist(1, 2));
}

TEST_CASE("fit configuration is validated") {
    ordgeo::TripleSet triples(4);
    triples.add({0, 1, 2});

    ordgeo::SoeConfig config;
    config.dim = 0;
    CHECK_THROWS_AS(ordgeo::soe_fit(4, triples, config), ordgeo::InvalidQueryError);

    config.dim = 2;
    config.restarts = 0;
    CHECK_THROWS_AS(ordgeo::soe_fit(4, triples, config), ordgeo::InvalidQueryError);

    config.restarts = 1;
    CHECK_THROWS_AS(ordgeo::soe_fit(7, triples, config), ordgeo::InsufficientDataError);
}
