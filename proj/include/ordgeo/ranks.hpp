/// @file  ranks.hpp
/// @brief Rank columns and the ordinal-geometry predicates built on them.
///
/// Once a head p is sorted, r_p[x] is the rank of object x by distance from
/// p (the head itself holds rank 0). Everything geometric in this library
/// is phrased over such rank vectors: domination ("above"), lens membership,
/// and the ordinal convex hull estimate.

#pragma once

#include "ordgeo/errors.hpp"
#include "ordgeo/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace ordgeo {

/// Immutable store of sorted heads. A column is inserted at most once;
/// ranks are dense 0..n-1 with the head first.
class RankTable {
public:
    explicit RankTable(std::size_t n) : n_(n), order_(n), rank_(n), present_(n, false) {}

    std::size_t size() const { return n_; }

    bool has(std::size_t head) const { return head < n_ && present_[head]; }

    const std::vector<std::size_t>& heads() const { return heads_; }

    /// Objects nearest-first from `head`; order[0] == head.
    const std::vector<std::size_t>& order_for(std::size_t head) const {
        check(head);
        return order_[head];
    }

    /// r_head[object].
    std::size_t rank(std::size_t head, std::size_t object) const {
        check(head);
        return rank_[head][object];
    }

    /// Full rank column of `head`, indexed by object.
    const std::vector<std::size_t>& ranks_for(std::size_t head) const {
        check(head);
        return rank_[head];
    }

    void insert(std::size_t head, std::vector<std::size_t> order) {
        if (head >= n_) throw InvalidQueryError("rank column head out of range");
        if (present_[head]) throw InternalInvariantError("rank column inserted twice for head "
                                                         + std::to_string(head));
        if (order.size() != n_ || order[0] != head)
            throw InternalInvariantError("rank column must order all objects with its head first");
        std::vector<std::size_t> inverse(n_);
        for (std::size_t r = 0; r < n_; ++r) inverse[order[r]] = r;
        order_[head] = std::move(order);
        rank_[head] = std::move(inverse);
        present_[head] = true;
        heads_.push_back(head);
    }

private:
    void check(std::size_t head) const {
        if (!has(head))
            throw MissingRankingError("no rank column for head " + std::to_string(head));
    }

    std::size_t n_;
    std::vector<std::size_t> heads_;
    std::vector<std::vector<std::size_t>> order_;
    std::vector<std::vector<std::size_t>> rank_;
    std::vector<bool> present_;
};

/// Sort `head` if absent and record its column; a warm column costs nothing.
inline void ensure_head_sorted(RankTable& table, TripletOracle& oracle, std::size_t head) {
    if (table.has(head)) return;
    table.insert(head, sort_for_head(oracle, head));
}

/// True iff x is above q with respect to `centers`: every center ranks q
/// strictly closer than x. Transitive, and invariant to any monotone
/// distortion of the underlying distances.
inline bool dominates(const RankTable& table, std::size_t q, std::size_t x,
                      std::span<const std::size_t> centers) {
    for (const std::size_t c : centers)
        if (table.rank(c, q) >= table.rank(c, x)) return false;
    return true;
}

/// Number of `targets` that x sits above with respect to `centers`.
inline std::size_t above_count(const RankTable& table, std::size_t x,
                               std::span<const std::size_t> centers,
                               std::span<const std::size_t> targets) {
    std::size_t count = 0;
    for (const std::size_t t : targets)
        if (dominates(table, t, x, centers)) ++count;
    return count;
}

namespace detail {

/// Two-center hull estimate by a single sweep in r_a order, carrying the
/// prefix minimum of r_b. Output is already ordered by rank from a.
inline std::vector<std::size_t> conv_hat_pair(const RankTable& table,
                                              std::size_t a, std::size_t b) {
    const auto& order_a = table.order_for(a);
    const auto& rank_b = table.ranks_for(b);
    std::vector<std::size_t> members;
    std::size_t prefix_min = table.size(); // above any real rank
    for (const std::size_t x : order_a) {
        const std::size_t rb = rank_b[x];
        if (rb < prefix_min) {
            members.push_back(x);
            prefix_min = rb;
        }
    }
    return members;
}

} // namespace detail

/// Ordinal convex hull estimate of the objects indexed by P (all sorted):
/// x survives unless some object is strictly closer to every member of P.
/// Always a superset of the true hull members; false positives hug the
/// hull boundary. Worst case O(n^2 |P|), but each object is dismissed at
/// its first dominator and candidates are scanned in rank-sum order, which
/// finds dominators early. Output is sorted by object index, except for
/// |P| = 2 where it is ordered by rank from the first center.
inline std::vector<std::size_t> conv_hat(const RankTable& table,
                                         std::span<const std::size_t> P) {
    if (P.empty()) throw InvalidQueryError("conv_hat needs at least one center");
    if (P.size() == 1) return {P[0]};
    if (P.size() == 2) return detail::conv_hat_pair(table, P[0], P[1]);

    const std::size_t n = table.size();
    std::vector<const std::vector<std::size_t>*> cols;
    cols.reserve(P.size());
    for (const std::size_t p : P) cols.push_back(&table.ranks_for(p));

    std::vector<std::uint64_t> sum(n, 0);
    for (const auto* col : cols)
        for (std::size_t x = 0; x < n; ++x) sum[x] += (*col)[x];

    std::vector<std::size_t> by_sum(n);
    std::iota(by_sum.begin(), by_sum.end(), std::size_t{0});
    std::sort(by_sum.begin(), by_sum.end(),
              [&](std::size_t l, std::size_t r) {
                  return sum[l] != sum[r] ? sum[l] < sum[r] : l < r;
              });

    const std::uint64_t gap = cols.size(); // strict domination costs >= 1 rank per center
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < n; ++x) {
        bool dominated = false;
        for (const std::size_t q : by_sum) {
            if (sum[q] + gap > sum[x]) break;
            bool q_dominates = true;
            for (const auto* col : cols) {
                if ((*col)[q] >= (*col)[x]) {
                    q_dominates = false;
                    break;
                }
            }
            if (q_dominates) {
                dominated = true;
                break;
            }
        }
        if (!dominated) members.push_back(x);
    }
    return members;
}

/// Objects no farther from every center than the apex is. The apex itself
/// is always a member.
struct LensSet {
    std::vector<std::size_t> centers;
    std::size_t apex = 0;
    std::vector<std::size_t> members;
};

inline LensSet lens_members(const RankTable& table,
                            std::span<const std::size_t> centers, std::size_t apex) {
    if (centers.empty()) throw InvalidQueryError("lens needs at least one center");
    LensSet lens;
    lens.centers.assign(centers.begin(), centers.end());
    lens.apex = apex;
    const std::size_t n = table.size();
    for (std::size_t x = 0; x < n; ++x) {
        bool inside = true;
        for (const std::size_t c : centers) {
            if (table.rank(c, x) > table.rank(c, apex)) {
                inside = false;
                break;
            }
        }
        if (inside) lens.members.push_back(x);
    }
    return lens;
}

/// Axis sanity: members listed by ascending rank from e1 must have strictly
/// descending rank from e2. Holds by construction for two-center hull
/// estimates; exposed so fixtures and serialized axes can be checked.
inline bool is_order_consistent(const RankTable& table,
                                std::span<const std::size_t> members,
                                std::size_t e1, std::size_t e2) {
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (table.rank(e1, members[i - 1]) >= table.rank(e1, members[i])) return false;
        if (table.rank(e2, members[i - 1]) <= table.rank(e2, members[i])) return false;
    }
    return true;
}

} // namespace ordgeo
