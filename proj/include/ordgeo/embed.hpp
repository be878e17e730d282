/// @file  embed.hpp
/// @brief Integer coordinates along discovered axes.
///
/// Each object's coordinate on an axis is a position in that axis's member
/// list. The default rule takes the lower median of the axis members caught
/// in the object's lens, which needs no comparisons at all: every question
/// it would ask was already answered when the endpoints were sorted. A
/// linear-search rule that spends comparisons to find the truly closest
/// member is available for diagnostics and for the distance-bound analysis.

#pragma once

#include "ordgeo/basis.hpp"
#include "ordgeo/errors.hpp"
#include "ordgeo/oracle.hpp"
#include "ordgeo/ranks.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace ordgeo {

/// Integer-valued coordinates, one row per object, one column per axis.
struct OrdinalEmbedding {
    Eigen::MatrixXd coordinates;

    std::size_t objects() const { return static_cast<std::size_t>(coordinates.rows()); }
    std::size_t dimensions() const { return static_cast<std::size_t>(coordinates.cols()); }
};

namespace detail {

/// Positions (indices into axis.members) of the axis members inside the
/// lens of x with the axis endpoints as centers. Ascending by construction.
inline std::vector<std::size_t> lens_member_positions(const RankTable& table,
                                                      const Axis& axis, std::size_t x) {
    const auto& r1 = table.ranks_for(axis.first_endpoint);
    const auto& r2 = table.ranks_for(axis.second_endpoint);
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < axis.members.size(); ++i) {
        const std::size_t m = axis.members[i];
        if (r1[m] <= r1[x] && r2[m] <= r2[x]) positions.push_back(i);
    }
    return positions;
}

} // namespace detail

/// Coordinate of x on an axis: the lower median position of the axis
/// members inside x's lens. An axis member is its own coordinate. The lens
/// always catches at least one member; an empty catch means the axis
/// structures are inconsistent and is reported as an invariant failure.
inline std::size_t coordinate(const RankTable& table, const Axis& axis, std::size_t x) {
    const std::vector<std::size_t> caught = detail::lens_member_positions(table, axis, x);
    if (caught.empty())
        throw InternalInvariantError("lens of object " + std::to_string(x)
                                     + " caught no axis member");
    return caught[(caught.size() - 1) / 2];
}

/// Coordinate of x by spending comparisons: among the caught members, find
/// the one truly closest to x with a |caught|-1 comparison tournament.
inline std::size_t linear_search_coordinate(TripletOracle& oracle, const RankTable& table,
                                            const Axis& axis, std::size_t x) {
    const std::vector<std::size_t> caught = detail::lens_member_positions(table, axis, x);
    if (caught.empty())
        throw InternalInvariantError("lens of object " + std::to_string(x)
                                     + " caught no axis member");
    for (const std::size_t pos : caught)
        if (axis.members[pos] == x) return pos; // own position, no comparisons
    std::size_t best = caught[0];
    for (std::size_t i = 1; i < caught.size(); ++i) {
        if (oracle.answer({x, axis.members[caught[i]], axis.members[best]}))
            best = caught[i];
    }
    return best;
}

/// Embed every object along every axis with the median rule. Reads only the
/// rank table, so the comparison ledger cannot move.
inline OrdinalEmbedding embed_all(const RankTable& table, const Basis& basis) {
    const std::size_t n = table.size();
    OrdinalEmbedding embedding;
    embedding.coordinates.resize(static_cast<Eigen::Index>(n),
                                 static_cast<Eigen::Index>(basis.axes.size()));
    for (std::size_t j = 0; j < basis.axes.size(); ++j) {
        const Axis& axis = basis.axes[j];
        for (std::size_t x = 0; x < n; ++x)
            embedding.coordinates(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j)) =
                static_cast<double>(coordinate(table, axis, x));
    }
    return embedding;
}

/// Embed with the linear-search rule; consumes comparisons.
inline OrdinalEmbedding embed_all_linear_search(TripletOracle& oracle, const RankTable& table,
                                                const Basis& basis) {
    const std::size_t n = table.size();
    OrdinalEmbedding embedding;
    embedding.coordinates.resize(static_cast<Eigen::Index>(n),
                                 static_cast<Eigen::Index>(basis.axes.size()));
    for (std::size_t j = 0; j < basis.axes.size(); ++j) {
        const Axis& axis = basis.axes[j];
        for (std::size_t x = 0; x < n; ++x)
            embedding.coordinates(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j)) =
                static_cast<double>(linear_search_coordinate(oracle, table, axis, x));
    }
    return embedding;
}

/// Euclidean distance between two embedded objects.
inline double embedded_distance(const OrdinalEmbedding& embedding, std::size_t a, std::size_t b) {
    return (embedding.coordinates.row(static_cast<Eigen::Index>(a))
            - embedding.coordinates.row(static_cast<Eigen::Index>(b))).norm();
}

} // namespace ordgeo
