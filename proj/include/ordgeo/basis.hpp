/// @file  basis.hpp
/// @brief Axis discovery: build an ordinal basis from triplet comparisons.
///
/// An axis is the ordinal stand-in for a line segment: two far-apart
/// endpoints plus the hull-estimate members between them. Axes are grown
/// greedily. Each new direction starts from a candidate point chosen to sit
/// above as many current hull members as possible, and growth stops when no
/// candidate rises above the hull or when the affine-independence check
/// says the candidate adds no new direction. The number of completed axes
/// is the dimensionality estimate, which never exceeds the true dimension.

#pragma once

#include "ordgeo/errors.hpp"
#include "ordgeo/oracle.hpp"
#include "ordgeo/random.hpp"
#include "ordgeo/ranks.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ordgeo {

/// One discovered direction. `members` is ordered by rank from
/// first_endpoint and always contains both endpoints.
struct Axis {
    std::size_t first_endpoint = 0;
    std::size_t second_endpoint = 0;
    std::vector<std::size_t> members;
};

/// How the candidate step reads "above the hull of prior endpoints".
///
/// TwoCenter scores candidates against every endpoint sorted so far; this
/// is the geometric reading in which both ends of each axis act as lens
/// centers, and it is the default. Literal replays the bookkeeping of the
/// published pseudocode, where the very first candidate is scored against
/// the first endpoint alone; it is kept for comparison.
enum class CandidateRule { TwoCenter, Literal };

/// Which point set feeds the hull estimate that candidates must rise above:
/// the affine set (default) or every endpoint.
enum class HullSource { AffineSet, AllEndpoints };

/// How a new direction's starting point is picked: LensApex is the
/// above-the-hull rule; FarthestRank is the farthest-rank-first traversal,
/// which greedily maximizes the minimum rank from all current endpoints.
enum class EndpointStrategy { LensApex, FarthestRank };

struct BasisConfig {
    std::uint64_t seed = 0;
    CandidateRule candidate_rule = CandidateRule::TwoCenter;
    HullSource hull_source = HullSource::AffineSet;
    EndpointStrategy strategy = EndpointStrategy::LensApex;
    /// Overrides the seeded choice of the initial scan point.
    std::optional<std::size_t> start_point;
};

/// A discovered basis. affine_set lists both endpoints of the first axis,
/// then the starting endpoint of each later axis, then (if the search ended
/// on a dependence) the rejected candidate, whose rank column stays in the
/// table as sunk cost.
struct Basis {
    std::vector<Axis> axes;
    std::vector<std::size_t> affine_set;
    std::uint64_t comparisons_used = 0;

    std::size_t dimension_estimate() const { return axes.size(); }
};

struct BasisResult {
    Basis basis;
    RankTable ranks;
};

/// Complete an axis that starts at `first`: the far endpoint is the point
/// of highest rank from `first` inside the lens of the prior endpoints with
/// apex `first` (the whole collection when there are none). Prior endpoints
/// and `first` itself are not eligible. Throws DegenerateAxisError when the
/// lens holds no eligible point.
inline Axis complete_axis(TripletOracle& oracle, RankTable& table,
                          std::span<const std::size_t> prior_endpoints,
                          std::size_t first) {
    ensure_head_sorted(table, oracle, first);
    const std::size_t n = table.size();

    std::vector<bool> eligible(n, true);
    eligible[first] = false;
    for (const std::size_t e : prior_endpoints) eligible[e] = false;
    if (!prior_endpoints.empty()) {
        const LensSet lens = lens_members(table, prior_endpoints, first);
        std::vector<bool> in_lens(n, false);
        for (const std::size_t x : lens.members) in_lens[x] = true;
        for (std::size_t x = 0; x < n; ++x)
            if (!in_lens[x]) eligible[x] = false;
    }

    const auto& order = table.order_for(first);
    std::size_t second = n;
    for (std::size_t r = n; r-- > 0;) {
        if (eligible[order[r]]) {
            second = order[r];
            break;
        }
    }
    if (second == n)
        throw DegenerateAxisError("lens around endpoint " + std::to_string(first)
                                  + " holds no eligible far point");

    ensure_head_sorted(table, oracle, second);
    Axis axis;
    axis.first_endpoint = first;
    axis.second_endpoint = second;
    axis.members = conv_hat(table, std::array<std::size_t, 2>{first, second});
    return axis;
}

/// Candidate for the next direction: the object above the most hull members
/// with respect to `centers`. Objects in `excluded` (and the centers) are
/// not considered. Ties break to the smaller index; returns nothing when no
/// object is above any hull member at all.
inline std::optional<std::size_t> pick_candidate(const RankTable& table,
                                                 std::span<const std::size_t> centers,
                                                 std::span<const std::size_t> hull,
                                                 std::span<const std::size_t> excluded) {
    const std::size_t n = table.size();
    std::vector<bool> skip(n, false);
    for (const std::size_t e : excluded) skip[e] = true;
    for (const std::size_t c : centers) skip[c] = true;

    std::size_t best_count = 0;
    std::optional<std::size_t> best;
    for (std::size_t x = 0; x < n; ++x) {
        if (skip[x]) continue;
        const std::size_t count = above_count(table, x, centers, hull);
        if (count > best_count) {
            best_count = count;
            best = x;
        }
    }
    return best;
}

/// True iff the hull estimate of P exceeds the union of the hull estimates
/// of P minus one member, i.e. some object needs all of P to be covered.
/// Equality (dependence) is detected without materializing the sub-hulls:
/// an object x in conv_hat(P) lies outside every sub-hull exactly when each
/// z in P has a witness q that is closer than x to every center but z.
inline bool affine_independent(const RankTable& table, std::span<const std::size_t> P) {
    if (P.size() < 3) throw InvalidQueryError("affine independence needs at least three points");
    if (P.size() > 64) throw InvalidQueryError("affine set too large");
    const std::size_t n = table.size();

    std::vector<const std::vector<std::size_t>*> cols;
    cols.reserve(P.size());
    for (const std::size_t p : P) cols.push_back(&table.ranks_for(p));

    const std::uint64_t full = (P.size() == 64) ? ~0ULL : ((1ULL << P.size()) - 1);
    for (const std::size_t x : conv_hat(table, P)) {
        std::uint64_t witnessed = 0;
        for (std::size_t q = 0; q < n && witnessed != full; ++q) {
            std::size_t violations = 0;
            std::size_t last = 0;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if ((*cols[j])[q] >= (*cols[j])[x]) {
                    ++violations;
                    if (violations > 1) break;
                    last = j;
                }
            }
            if (violations == 1) witnessed |= 1ULL << last;
        }
        if (witnessed == full) return true;
    }
    return false;
}

/// Farthest-rank-first traversal: grow a set of probe points, each new one
/// maximizing its minimum rank from those already chosen, starting from the
/// far end of a scan that begins at `start`. Every selection is sorted, so
/// the traversal consumes comparisons for each point it returns.
inline std::vector<std::size_t> frft_endpoints(TripletOracle& oracle, RankTable& table,
                                               std::size_t count, std::size_t start) {
    const std::size_t n = oracle.size();
    if (count == 0 || count > n)
        throw InsufficientDataError("traversal count must be within the collection");
    if (n < 2) throw InsufficientDataError("traversal needs at least two objects");

    std::vector<std::size_t> selected;
    selected.reserve(count);
    std::vector<bool> taken(n, false);

    const std::size_t p = farthest_from(oracle, start);
    ensure_head_sorted(table, oracle, p);
    selected.push_back(p);
    taken[p] = true;

    while (selected.size() < count) {
        std::size_t best = n;
        std::size_t best_rank = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (taken[x]) continue;
            std::size_t low = n;
            for (const std::size_t s : selected)
                low = std::min(low, table.rank(s, x));
            if (best == n || low > best_rank) {
                best = x;
                best_rank = low;
            }
        }
        ensure_head_sorted(table, oracle, best);
        selected.push_back(best);
        taken[best] = true;
    }
    return selected;
}

/// Discover a basis. The scan point z is drawn from the seed (unless
/// pinned), the first endpoint is the object farthest from z, and each axis
/// is completed inside the lens of the endpoints found before it. Unique
/// comparisons consumed stay within (n-2) + 2*d*n*ceil(log2 n) for d axes,
/// plus one extra sorted column when the search ends on a rejected
/// candidate.
inline BasisResult choose_basis(TripletOracle& oracle, const BasisConfig& config = {}) {
    const std::size_t n = oracle.size();
    if (n < 3) throw InsufficientDataError("basis discovery needs at least three objects");

    RankTable table(n);
    const std::uint64_t unique_before = oracle.ledger().unique_count();

    std::size_t z;
    if (config.start_point) {
        if (*config.start_point >= n) throw InvalidQueryError("start point out of range");
        z = *config.start_point;
    } else {
        z = RandomStream(config.seed, "basis-start").next_index(n);
    }

    Basis basis;
    std::vector<std::size_t> endpoints;
    std::size_t first = farthest_from(oracle, z);

    while (endpoints.size() + 1 < n) {
        Axis axis;
        try {
            axis = complete_axis(oracle, table, endpoints, first);
        } catch (const DegenerateAxisError&) {
            break;
        }
        basis.axes.push_back(axis);
        endpoints.push_back(axis.first_endpoint);
        endpoints.push_back(axis.second_endpoint);
        if (basis.axes.size() == 1)
            basis.affine_set = {axis.first_endpoint, axis.second_endpoint};

        std::optional<std::size_t> candidate;
        if (config.strategy == EndpointStrategy::FarthestRank) {
            std::size_t best_rank = 0;
            for (std::size_t x = 0; x < n; ++x) {
                if (std::find(endpoints.begin(), endpoints.end(), x) != endpoints.end()) continue;
                std::size_t low = n;
                for (const std::size_t e : endpoints)
                    low = std::min(low, table.rank(e, x));
                if (!candidate || low > best_rank) {
                    candidate = x;
                    best_rank = low;
                }
            }
        } else {
            std::span<const std::size_t> centers;
            std::span<const std::size_t> hull_base;
            const std::span<const std::size_t> first_only(&basis.affine_set[0], 1);
            if (config.candidate_rule == CandidateRule::Literal) {
                centers = (basis.axes.size() == 1)
                              ? first_only
                              : std::span<const std::size_t>(basis.affine_set);
                hull_base = centers;
            } else {
                centers = endpoints;
                hull_base = (config.hull_source == HullSource::AllEndpoints)
                                ? std::span<const std::size_t>(endpoints)
                                : std::span<const std::size_t>(basis.affine_set);
            }
            const std::vector<std::size_t> hull = conv_hat(table, hull_base);
            candidate = pick_candidate(table, centers, hull, endpoints);
        }
        if (!candidate) break;

        ensure_head_sorted(table, oracle, *candidate);
        basis.affine_set.push_back(*candidate);
        if (!affine_independent(table, basis.affine_set)) break;

        first = *candidate;
    }

    basis.comparisons_used = oracle.ledger().unique_count() - unique_before;
    return BasisResult{std::move(basis), std::move(table)};
}

} // namespace ordgeo
