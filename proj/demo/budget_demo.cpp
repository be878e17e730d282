/// Comparison-budget sweep: how the number of unique triplet queries grows
/// with the collection size, next to the n log n yardstick.

#include <ordgeo/ordgeo.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

int main() {
    std::printf("%8s %6s %12s %14s\n", "n", "d_hat", "comparisons", "per n log2 n");
    for (const std::size_t n : {125u, 250u, 500u, 1000u}) {
        const auto dataset = ordgeo::generate_dataset(ordgeo::DatasetKind::Ball, n, 2, 42);
        ordgeo::GroundTruthOracle oracle(dataset.points);
        ordgeo::BasisConfig config;
        config.seed = 42;
        auto [basis, ranks] = ordgeo::choose_basis(oracle, config);
        const double unit = static_cast<double>(n) * std::log2(static_cast<double>(n));
        std::printf("%8zu %6zu %12zu %14.3f\n", n, basis.dimension_estimate(),
                    oracle.ledger().unique_count(),
                    static_cast<double>(oracle.ledger().unique_count()) / unit);
    }
    return EXIT_SUCCESS;
}
