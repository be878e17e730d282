/// @file  oracle.hpp
/// @brief Triplet comparison oracles and the comparison ledger.
///
/// The only question the rest of the library may ask about the data is
/// "is `left` or `right` closer to `head`?". Every call is routed through
/// a ledger that memoizes answers, so repeated questions are free and the
/// cost of a run is reported as the number of distinct questions asked.

#pragma once

#include "ordgeo/errors.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ordgeo {

/// One comparison request. Objects are 0-based row indices.
struct TripletQuery {
    std::size_t head;
    std::size_t left;
    std::size_t right;
};

/// Memoizing account of every comparison asked of an oracle.
///
/// A query and its mirror (left/right swapped) share one cache entry whose
/// stored answer refers to the canonical orientation (smaller index first);
/// the mirror is served by negation. unique_count() is the number of
/// distinct canonical questions ever answered, total_calls() counts every
/// invocation including cache hits.
class ComparisonLedger {
public:
    explicit ComparisonLedger(std::size_t n) : n_(n) {}

    std::optional<bool> find(std::size_t head, std::size_t lo, std::size_t hi) const {
        const auto it = cache_.find(key(head, lo, hi));
        if (it == cache_.end()) return std::nullopt;
        return it->second;
    }

    void store(std::size_t head, std::size_t lo, std::size_t hi, bool lo_closer) {
        cache_.emplace(key(head, lo, hi), lo_closer);
        ++unique_;
    }

    void record_call() { ++total_; }

    std::uint64_t unique_count() const { return unique_; }
    std::uint64_t total_calls() const { return total_; }

private:
    std::uint64_t key(std::size_t head, std::size_t lo, std::size_t hi) const {
        return (static_cast<std::uint64_t>(head) * n_ + lo) * n_ + hi;
    }

    std::size_t n_;
    std::unordered_map<std::uint64_t, bool> cache_;
    std::uint64_t unique_ = 0;
    std::uint64_t total_ = 0;
};

/// Abstract comparison source. Subclasses decide a single canonical
/// comparison; validation, mirroring and ledger bookkeeping live here.
/// The ledger is not synchronized: callers that share one oracle across
/// threads must serialize answer() themselves.
class TripletOracle {
public:
    explicit TripletOracle(std::size_t n) : n_(n), ledger_(n) {}
    virtual ~TripletOracle() = default;

    std::size_t size() const { return n_; }

    /// True iff `left` is strictly closer to `head` than `right`, with
    /// exact ties broken toward the smaller object index.
    bool answer(const TripletQuery& q) {
        validate(q);
        ledger_.record_call();
        const std::size_t lo = q.left < q.right ? q.left : q.right;
        const std::size_t hi = q.left < q.right ? q.right : q.left;
        bool lo_closer;
        if (const auto hit = ledger_.find(q.head, lo, hi)) {
            lo_closer = *hit;
        } else {
            lo_closer = closer_to_head(q.head, lo, hi);
            ledger_.store(q.head, lo, hi, lo_closer);
        }
        return (q.left == lo) ? lo_closer : !lo_closer;
    }

    const ComparisonLedger& ledger() const { return ledger_; }

protected:
    /// Decide the canonical question: is `lo` strictly closer to `head`
    /// than `hi`, given lo < hi? Ties must resolve to true (smaller index).
    virtual bool closer_to_head(std::size_t head, std::size_t lo, std::size_t hi) const = 0;

private:
    void validate(const TripletQuery& q) const {
        if (q.head >= n_ || q.left >= n_ || q.right >= n_)
            throw InvalidQueryError("triplet query index out of range (n=" + std::to_string(n_) + ")");
        if (q.head == q.left || q.head == q.right || q.left == q.right)
            throw InvalidQueryError("triplet query must name three distinct objects");
    }

    std::size_t n_;
    ComparisonLedger ledger_;
};

/// Oracle backed by known coordinates; answers come from exact Euclidean
/// distances. This stands in for the human judgments the algorithms are
/// designed around, so nothing outside this class may touch the positions.
class GroundTruthOracle : public TripletOracle {
public:
    /// @param points  one object per row.
    explicit GroundTruthOracle(Eigen::MatrixXd points)
        : TripletOracle(static_cast<std::size_t>(points.rows())), points_(std::move(points)) {}

    const Eigen::MatrixXd& points() const { return points_; }

protected:
    bool closer_to_head(std::size_t head, std::size_t lo, std::size_t hi) const override {
        const double dl = (points_.row(lo) - points_.row(head)).squaredNorm();
        const double dh = (points_.row(hi) - points_.row(head)).squaredNorm();
        if (dl != dh) return dl < dh;
        return true; // exact tie: smaller index wins, and lo < hi here
    }

private:
    Eigen::MatrixXd points_;
};

namespace detail {

/// Merge sort on object indices under an oracle comparator. Chosen over
/// introsort for its worst-case comparison count: m elements never cost
/// more than m*ceil(log2 m) answers.
inline void merge_sort_by_head(TripletOracle& oracle, std::size_t head,
                               std::vector<std::size_t>& items,
                               std::vector<std::size_t>& scratch,
                               std::size_t lo, std::size_t hi) {
    if (hi - lo <= 1) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    merge_sort_by_head(oracle, head, items, scratch, lo, mid);
    merge_sort_by_head(oracle, head, items, scratch, mid, hi);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (oracle.answer({head, items[a], items[b]}))
            scratch[out++] = items[a++];
        else
            scratch[out++] = items[b++];
    }
    while (a < mid) scratch[out++] = items[a++];
    while (b < hi) scratch[out++] = items[b++];
    for (std::size_t i = lo; i < hi; ++i) items[i] = scratch[i];
}

} // namespace detail

/// Sort all objects by distance from `head`, nearest first. The head is
/// pinned at rank 0 and never enters a query. Consumes at most
/// n*ceil(log2 n) unique comparisons on a cold cache.
inline std::vector<std::size_t> sort_for_head(TripletOracle& oracle, std::size_t head) {
    const std::size_t n = oracle.size();
    if (head >= n) throw InvalidQueryError("sort head out of range");
    if (n < 2) throw InsufficientDataError("sorting needs at least two objects");
    std::vector<std::size_t> items;
    items.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (i != head) items.push_back(i);
    std::vector<std::size_t> scratch(items.size());
    detail::merge_sort_by_head(oracle, head, items, scratch, 0, items.size());
    std::vector<std::size_t> order;
    order.reserve(n);
    order.push_back(head);
    order.insert(order.end(), items.begin(), items.end());
    return order;
}

/// Index of the object farthest from `z`, by a single elimination pass.
/// Consumes exactly n-2 unique comparisons on a cold cache.
inline std::size_t farthest_from(TripletOracle& oracle, std::size_t z) {
    const std::size_t n = oracle.size();
    if (z >= n) throw InvalidQueryError("scan start out of range");
    if (n < 2) throw InsufficientDataError("farthest scan needs at least two objects");
    std::size_t best = (z == 0) ? 1 : 0;
    for (std::size_t x = best + 1; x < n; ++x) {
        if (x == z) continue;
        if (oracle.answer({z, best, x})) best = x; // current best is closer, so x is farther
    }
    return best;
}

} // namespace ordgeo
