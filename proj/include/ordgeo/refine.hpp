/// @file  refine.hpp
/// @brief Turn runs into triples, and buy better neighborhoods cheaply.
///
/// Every sorted head already certifies a chain of "closer than" facts; the
/// consecutive pairs of each rank column are exported as triples for free.
/// Refinement then spends a small extra budget per object: take the 2k
/// nearest neighbors suggested by the coarse embedding, confirm their true
/// order with the oracle, and export those consecutive pairs as well.

#pragma once

#include "ordgeo/embed.hpp"
#include "ordgeo/errors.hpp"
#include "ordgeo/oracle.hpp"
#include "ordgeo/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <unordered_set>
#include <vector>

namespace ordgeo {

/// One ordinal fact: `closer` is nearer to `head` than `farther` is.
struct Triple {
    std::size_t head;
    std::size_t closer;
    std::size_t farther;

    bool operator==(const Triple&) const = default;
};

/// Deduplicated collection of triples over n objects.
class TripleSet {
public:
    explicit TripleSet(std::size_t n) : n_(n) {}

    std::size_t objects() const { return n_; }
    std::size_t size() const { return items_.size(); }
    const std::vector<Triple>& items() const { return items_; }

    /// Adds one triple; returns false when it was already present.
    bool add(const Triple& t) {
        if (t.head >= n_ || t.closer >= n_ || t.farther >= n_)
            throw InvalidQueryError("triple index out of range");
        if (t.head == t.closer || t.head == t.farther || t.closer == t.farther)
            throw InvalidQueryError("triple must name three distinct objects");
        const std::uint64_t key = (static_cast<std::uint64_t>(t.head) * n_ + t.closer) * n_ + t.farther;
        if (!seen_.insert(key).second) return false;
        items_.push_back(t);
        return true;
    }

    /// Union with another set; duplicates are dropped.
    void merge(const TripleSet& other) {
        for (const Triple& t : other.items()) add(t);
    }

private:
    std::size_t n_;
    std::vector<Triple> items_;
    std::unordered_set<std::uint64_t> seen_;
};

/// Default neighborhood size: ceil(log2 n).
inline std::size_t default_knn_k(std::size_t n) {
    if (n < 2) return 1;
    std::size_t k = 0, v = 1;
    while (v < n) { v <<= 1; ++k; }
    return k == 0 ? 1 : k;
}

/// Export the consecutive rank pairs of every sorted head. Rank 0 is the
/// head itself and is skipped, so each head yields exactly n-2 triples and
/// no comparisons are consumed.
inline TripleSet basis_triples(const RankTable& table) {
    const std::size_t n = table.size();
    TripleSet triples(n);
    for (const std::size_t head : table.heads()) {
        const auto& order = table.order_for(head);
        for (std::size_t j = 1; j + 1 < n; ++j)
            triples.add({head, order[j], order[j + 1]});
    }
    return triples;
}

/// How confirmed neighborhoods are exported: Sort orders all 2k candidates
/// and exports every consecutive pair; Selection only separates the k
/// nearest from the rest and exports each against the boundary point.
enum class HarvestMode { Sort, Selection };

/// For every object, take its 2k nearest neighbors in the embedding
/// (ties by index), confirm them against the oracle, and export triples.
/// Sort mode consumes at most 2k*ceil(log2 2k) unique comparisons per head.
inline TripleSet harvest_knn_triples(TripletOracle& oracle, const OrdinalEmbedding& embedding,
                                     std::size_t k, HarvestMode mode = HarvestMode::Sort) {
    const std::size_t n = oracle.size();
    if (embedding.objects() != n)
        throw InsufficientDataError("embedding and oracle disagree on object count");
    if (k == 0) throw InvalidQueryError("neighborhood size must be positive");

    std::size_t m = 2 * k;
    if (m > n - 1) {
        std::cerr << "warning: neighborhood 2k=" << m << " clamped to " << (n - 1)
                  << " available objects\n";
        m = n - 1;
    }

    TripleSet triples(n);
    std::vector<std::size_t> others(n - 1);
    for (std::size_t head = 0; head < n; ++head) {
        std::size_t w = 0;
        for (std::size_t x = 0; x < n; ++x)
            if (x != head) others[w++] = x;
        std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(m),
                          others.end(), [&](std::size_t a, std::size_t b) {
                              const double da = embedded_distance(embedding, head, a);
                              const double db = embedded_distance(embedding, head, b);
                              return da != db ? da < db : a < b;
                          });
        std::vector<std::size_t> cand(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(m));

        if (mode == HarvestMode::Sort) {
            std::vector<std::size_t> scratch(cand.size());
            detail::merge_sort_by_head(oracle, head, cand, scratch, 0, cand.size());
            for (std::size_t j = 0; j + 1 < cand.size(); ++j)
                triples.add({head, cand[j], cand[j + 1]});
        } else {
            const std::size_t keep = std::min(k, cand.size() - 1);
            std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(keep),
                             cand.end(), [&](std::size_t a, std::size_t b) {
                                 return oracle.answer({head, a, b});
                             });
            const std::size_t boundary = cand[keep];
            for (std::size_t j = 0; j < keep; ++j)
                triples.add({head, cand[j], boundary});
        }
    }
    return triples;
}

} // namespace ordgeo
