/// @file  soe.hpp
/// @brief Soft ordinal embedding: fit real coordinates to triples.
///
/// The loss charges each triple (head, closer, farther) the squared hinge
/// max(0, d(head,closer) + margin - d(head,farther))^2, so it is zero once
/// every stated neighbor relation holds with a margin of slack. Fitting is
/// full-batch gradient descent with a backtracking line search, restarted
/// from independent uniform initializations; the best restart wins. A fit
/// counts as converged when its loss falls below the configured threshold.
///
/// Random starts alone rarely reach zero loss on large instances: shrinking
/// everything toward a point always pays when most triples are misordered,
/// and from that huddle monotone descent cannot recover the layout. Callers
/// that already hold a rough embedding can pass it as a warm start, which
/// replaces the first restart's initialization and skips the huddle.

#pragma once

#include "ordgeo/errors.hpp"
#include "ordgeo/random.hpp"
#include "ordgeo/refine.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

namespace ordgeo {

struct SoeConfig {
    std::size_t dim = 2;
    double margin = 0.1;
    std::size_t restarts = 20;
    double loss_threshold = 1e-3;   // convergence gate on the final loss
    std::size_t max_iterations = 1000;
    std::uint64_t seed = 0;
    std::size_t threads = 1;        // restarts run in parallel; results do not depend on this
    Eigen::MatrixXd start;          // optional warm start for the first restart; see soe_fit
};

struct SoeResult {
    Eigen::MatrixXd positions;      // n rows, dim columns
    double final_loss = std::numeric_limits<double>::infinity();
    std::size_t restarts_used = 0;
    std::size_t best_restart = 0;
    bool converged = false;
    bool dimension_doubled = false; // set by soe_fit_doubling
};

/// Hinge-squared loss of `positions` against the triples.
inline double soe_loss(const Eigen::MatrixXd& positions, const std::vector<Triple>& triples,
                       double margin) {
    const Eigen::Index dim = positions.cols();
    double loss = 0.0;
    for (const Triple& t : triples) {
        double d_close = 0.0, d_far = 0.0;
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double head = positions(static_cast<Eigen::Index>(t.head), j);
            const double dc = head - positions(static_cast<Eigen::Index>(t.closer), j);
            const double df = head - positions(static_cast<Eigen::Index>(t.farther), j);
            d_close += dc * dc;
            d_far += df * df;
        }
        const double hinge = std::sqrt(d_close) + margin - std::sqrt(d_far);
        if (hinge > 0.0) loss += hinge * hinge;
    }
    return loss;
}

/// Exact gradient of soe_loss at `positions`. Terms whose distance vanishes
/// contribute no direction (a valid subgradient choice).
inline Eigen::MatrixXd soe_gradient(const Eigen::MatrixXd& positions,
                                    const std::vector<Triple>& triples, double margin) {
    const Eigen::Index dim = positions.cols();
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(positions.rows(), dim);
    constexpr double tiny = 1e-12;
    for (const Triple& t : triples) {
        const auto h = static_cast<Eigen::Index>(t.head);
        const auto c = static_cast<Eigen::Index>(t.closer);
        const auto f = static_cast<Eigen::Index>(t.farther);
        double d_close = 0.0, d_far = 0.0;
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double dc = positions(h, j) - positions(c, j);
            const double df = positions(h, j) - positions(f, j);
            d_close += dc * dc;
            d_far += df * df;
        }
        d_close = std::sqrt(d_close);
        d_far = std::sqrt(d_far);
        const double hinge = d_close + margin - d_far;
        if (hinge <= 0.0) continue;
        const double wc = d_close > tiny ? 2.0 * hinge / d_close : 0.0;
        const double wf = d_far > tiny ? 2.0 * hinge / d_far : 0.0;
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double dc = positions(h, j) - positions(c, j);
            const double df = positions(h, j) - positions(f, j);
            grad(h, j) += wc * dc - wf * df;
            grad(c, j) -= wc * dc;
            grad(f, j) += wf * df;
        }
    }
    return grad;
}

namespace detail {

struct RestartOutcome {
    double loss = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd positions;
};

/// One restart: descent with an Armijo backtracking line search, starting
/// either from the caller's warm start (first restart only, when provided) or
/// from a uniform [0,1) draw out of the restart's own stream. Returns an
/// infinite loss when the optimization produced a non-finite value, so the
/// restart is discarded.
inline RestartOutcome soe_run_restart(std::size_t n, const std::vector<Triple>& triples,
                                      const SoeConfig& config, std::size_t restart) {
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(config.dim);
    Eigen::MatrixXd x;
    if (restart == 0 && config.start.rows() == rows && config.start.cols() > 0) {
        // Zero-padding any extra columns keeps every pairwise distance intact.
        x = Eigen::MatrixXd::Zero(rows, cols);
        x.leftCols(config.start.cols()) = config.start;
    } else {
        RandomStream stream(config.seed, "soe-restart",
                            (static_cast<std::uint64_t>(config.dim) << 32) | restart);
        x.resize(rows, cols);
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                x(i, j) = stream.next_double();
    }

    const double stop_loss = config.loss_threshold * 1e-2;
    double f = soe_loss(x, triples, config.margin);
    double step = 1.0;
    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        if (!std::isfinite(f)) return {};
        if (f <= stop_loss) break;
        const Eigen::MatrixXd g = soe_gradient(x, triples, config.margin);
        const double g2 = g.squaredNorm();
        if (g2 == 0.0 || !std::isfinite(g2)) break;
        // Each search restarts from a floored step so one crushed backtrack
        // cannot pin all later steps near zero, and acceptance demands strict
        // decrease so an underflowing Armijo margin cannot wave through no-ops.
        bool accepted = false;
        double trial_step = std::clamp(step * 2.0, 1e-6, 1e6);
        while (trial_step > 1e-18) {
            Eigen::MatrixXd trial = x - trial_step * g;
            const double ft = soe_loss(trial, triples, config.margin);
            if (std::isfinite(ft) && ft < f && ft <= f - 1e-4 * trial_step * g2) {
                x.swap(trial);
                f = ft;
                accepted = true;
                break;
            }
            trial_step *= 0.5;
        }
        if (!accepted) break;
        step = trial_step;
    }
    if (!std::isfinite(f)) return {};
    return {soe_loss(x, triples, config.margin), std::move(x)};
}

} // namespace detail

/// Fit positions for n objects to the triples. Deterministic for a given
/// seed: each restart draws from its own stream and ties between equal
/// losses go to the earlier restart, so the thread count cannot change the
/// answer. When config.start is set it must have one row per object and at
/// most config.dim columns; the first restart then begins from it (padded
/// with zero columns as needed) while the rest stay random.
inline SoeResult soe_fit(std::size_t n, const TripleSet& triples, const SoeConfig& config) {
    if (config.dim == 0) throw InvalidQueryError("embedding dimension must be positive");
    if (config.restarts == 0) throw InvalidQueryError("at least one restart is required");
    if (config.start.size() != 0 &&
        (config.start.rows() != static_cast<Eigen::Index>(n) ||
         config.start.cols() > static_cast<Eigen::Index>(config.dim)))
        throw InvalidQueryError("warm start needs one row per object and at most dim columns");
    if (triples.objects() != n)
        throw InsufficientDataError("triple set and object count disagree");
    for (const Triple& t : triples.items())
        if (t.head >= n || t.closer >= n || t.farther >= n)
            throw InvalidQueryError("triple references an object outside the collection");

    const std::vector<Triple>& items = triples.items();
    std::vector<detail::RestartOutcome> outcomes(config.restarts);

    const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, config.restarts));
    if (workers == 1) {
        for (std::size_t r = 0; r < config.restarts; ++r)
            outcomes[r] = detail::soe_run_restart(n, items, config, r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < config.restarts; r += workers)
                    outcomes[r] = detail::soe_run_restart(n, items, config, r);
            });
        }
        for (auto& t : pool) t.join();
    }

    SoeResult result;
    result.restarts_used = config.restarts;
    std::size_t best = config.restarts;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        if (outcomes[r].positions.size() == 0) continue; // discarded restart
        if (best == config.restarts || outcomes[r].loss < outcomes[best].loss) best = r;
    }
    if (best == config.restarts)
        throw InternalInvariantError("every restart diverged to a non-finite loss");
    result.best_restart = best;
    result.positions = std::move(outcomes[best].positions);
    result.final_loss = soe_loss(result.positions, items, config.margin);
    result.converged = result.final_loss < config.loss_threshold;
    return result;
}

/// Fit at the given dimension; if the best loss misses the convergence
/// threshold, refit at twice the dimension and report that result.
inline SoeResult soe_fit_doubling(std::size_t n, const TripleSet& triples, const SoeConfig& config) {
    SoeResult first = soe_fit(n, triples, config);
    if (first.converged) return first;
    SoeConfig wide = config;
    wide.dim = config.dim * 2;
    SoeResult second = soe_fit(n, triples, wide);
    second.dimension_doubled = true;
    return second;
}

} // namespace ordgeo
