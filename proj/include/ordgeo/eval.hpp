/// @file  eval.hpp
/// @brief Embedding quality metrics against ground-truth coordinates.
///
/// Every metric compares an embedding with the true point cloud it was
/// learned from. Rankings derived from distances break ties by object
/// index so repeated runs measure the same thing.

#pragma once

#include "ordgeo/embed.hpp"
#include "ordgeo/errors.hpp"
#include "ordgeo/geometry.hpp"
#include "ordgeo/refine.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace ordgeo {

namespace detail {

/// Objects sorted by distance from `head` under `points`, head excluded.
/// Ties resolve toward the smaller index via lexicographic keys.
inline std::vector<std::size_t> distance_ranking(const Eigen::MatrixXd& points, std::size_t head) {
    const auto n = static_cast<std::size_t>(points.rows());
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == head) continue;
        const double d = (points.row(static_cast<Eigen::Index>(i))
                          - points.row(static_cast<Eigen::Index>(head))).norm();
        keyed.emplace_back(d, i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> order;
    order.reserve(keyed.size());
    for (const auto& [d, i] : keyed) order.push_back(i);
    return order;
}

/// Number of inversions between `sequence` and ascending order, counted by
/// merge sort. The sequence holds each object's position under the
/// reference ranking, listed in the candidate ranking's order.
inline std::size_t count_inversions(std::vector<std::size_t>& sequence,
                                    std::vector<std::size_t>& scratch, std::size_t lo,
                                    std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::size_t inv = count_inversions(sequence, scratch, lo, mid)
                      + count_inversions(sequence, scratch, mid, hi);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (sequence[a] <= sequence[b]) {
            scratch[out++] = sequence[a++];
        } else {
            inv += mid - a;
            scratch[out++] = sequence[b++];
        }
    }
    while (a < mid) scratch[out++] = sequence[a++];
    while (b < hi) scratch[out++] = sequence[b++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              sequence.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

} // namespace detail

/// Kendall rank correlation between the distance rankings each object
/// induces in the two point sets, averaged over all objects as heads.
/// tau = 1 - 2 * inversions / (m choose 2) with m = n - 1 others per head.
inline double kendall_tau_mean(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& estimate) {
    if (truth.rows() != estimate.rows())
        throw InvalidQueryError("point sets must have matching sizes");
    const auto n = static_cast<std::size_t>(truth.rows());
    if (n < 3) throw InsufficientDataError("rank correlation needs at least 3 objects");

    const std::size_t m = n - 1;
    const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
    double total = 0.0;
    std::vector<std::size_t> position(n), sequence(m), scratch(m);
    for (std::size_t head = 0; head < n; ++head) {
        const auto ref = detail::distance_ranking(truth, head);
        const auto est = detail::distance_ranking(estimate, head);
        for (std::size_t r = 0; r < ref.size(); ++r) position[ref[r]] = r;
        for (std::size_t r = 0; r < est.size(); ++r) sequence[r] = position[est[r]];
        const std::size_t inv = detail::count_inversions(sequence, scratch, 0, m);
        total += 1.0 - 2.0 * static_cast<double>(inv) / pairs;
    }
    return total / static_cast<double>(n);
}

/// Fraction of each object's k nearest neighbors (true distances) that
/// also appear among its k nearest in the estimate, averaged over objects.
/// k defaults to ceil(log2 n) when zero.
inline double knn_precision(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& estimate,
                            std::size_t k = 0) {
    if (truth.rows() != estimate.rows())
        throw InvalidQueryError("point sets must have matching sizes");
    const auto n = static_cast<std::size_t>(truth.rows());
    if (n < 2) throw InsufficientDataError("neighbor precision needs at least 2 objects");
    if (k == 0) k = default_knn_k(n);
    k = std::min(k, n - 1);

    double total = 0.0;
    std::vector<char> is_true_neighbor(n);
    for (std::size_t head = 0; head < n; ++head) {
        const auto ref = detail::distance_ranking(truth, head);
        const auto est = detail::distance_ranking(estimate, head);
        std::fill(is_true_neighbor.begin(), is_true_neighbor.end(), 0);
        for (std::size_t r = 0; r < k; ++r) is_true_neighbor[ref[r]] = 1;
        std::size_t hit = 0;
        for (std::size_t r = 0; r < k; ++r) hit += is_true_neighbor[est[r]];
        total += static_cast<double>(hit) / static_cast<double>(k);
    }
    return total / static_cast<double>(n);
}

/// Root mean squared error between true pairwise distances and optimally
/// rescaled estimated ones. The scale s* = sum(d d_hat) / sum(d_hat^2)
/// minimizes the squared error; the mean runs over all unordered pairs.
inline double distance_rmse(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& estimate) {
    if (truth.rows() != estimate.rows())
        throw InvalidQueryError("point sets must have matching sizes");
    const auto n = static_cast<std::size_t>(truth.rows());
    if (n < 2) throw InsufficientDataError("distance error needs at least 2 objects");

    double cross = 0.0, est2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double t = (truth.row(static_cast<Eigen::Index>(i))
                              - truth.row(static_cast<Eigen::Index>(j))).norm();
            const double e = (estimate.row(static_cast<Eigen::Index>(i))
                              - estimate.row(static_cast<Eigen::Index>(j))).norm();
            cross += t * e;
            est2 += e * e;
        }
    }
    const double scale = est2 > 0.0 ? cross / est2 : 0.0;
    double sq = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double t = (truth.row(static_cast<Eigen::Index>(i))
                              - truth.row(static_cast<Eigen::Index>(j))).norm();
            const double e = (estimate.row(static_cast<Eigen::Index>(i))
                              - estimate.row(static_cast<Eigen::Index>(j))).norm();
            const double r = t - scale * e;
            sq += r * r;
            ++pairs;
        }
    }
    return std::sqrt(sq / static_cast<double>(pairs));
}

/// Least-squares scale factor aligning `estimate` distances to `truth`.
inline double fitted_scale(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& estimate) {
    if (truth.rows() != estimate.rows())
        throw InvalidQueryError("point sets must have matching sizes");
    const auto n = static_cast<std::size_t>(truth.rows());
    double cross = 0.0, est2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double t = (truth.row(static_cast<Eigen::Index>(i))
                              - truth.row(static_cast<Eigen::Index>(j))).norm();
            const double e = (estimate.row(static_cast<Eigen::Index>(i))
                              - estimate.row(static_cast<Eigen::Index>(j))).norm();
            cross += t * e;
            est2 += e * e;
        }
    }
    return est2 > 0.0 ? cross / est2 : 0.0;
}

/// Density radius of a sample: the radius of the largest ball inside the
/// sample's convex hull that contains no sample point. Estimated on a
/// grid; exact up to the grid's half-diagonal. Supports up to 3 dimensions.
inline double epsilon_estimate(const Eigen::MatrixXd& points, std::size_t resolution = 0) {
    const int d = static_cast<int>(points.cols());
    if (resolution == 0) resolution = d <= 2 ? 200 : 64;
    const HullRegion region(points);
    return largest_empty_ball(points, region, resolution).radius;
}

/// Bundle of the standard metrics for one embedding run.
struct EvalReport {
    double tau = 0.0;
    double knn = 0.0;
    double rmse = 0.0;
};

inline EvalReport evaluate_embedding(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& estimate,
                                     std::size_t k = 0) {
    EvalReport report;
    report.tau = kendall_tau_mean(truth, estimate);
    report.knn = knn_precision(truth, estimate, k);
    report.rmse = distance_rmse(truth, estimate);
    return report;
}

} // namespace ordgeo
