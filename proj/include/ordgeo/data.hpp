/// @file  data.hpp
/// @brief Synthetic dataset generators for experiments and tests.
///
/// All generators draw from named RandomStream instances, so a (kind, n, d,
/// seed) tuple always produces the same cloud on every platform. Points come
/// back as an n x d matrix, one object per row.

#pragma once

#include "ordgeo/errors.hpp"
#include "ordgeo/random.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <iostream>
#include <string>
#include <vector>

namespace ordgeo {

enum class DatasetKind {
    Ball,     ///< uniform in the unit ball
    Sphere,   ///< uniform on the unit sphere surface
    Gaussian, ///< standard normal
    Gmm,      ///< mixture of spherical Gaussians
};

inline std::string to_string(DatasetKind kind) {
    switch (kind) {
    case DatasetKind::Ball: return "ball";
    case DatasetKind::Sphere: return "sphere";
    case DatasetKind::Gaussian: return "gaussian";
    case DatasetKind::Gmm: return "gmm";
    }
    throw InvalidQueryError("unknown dataset kind");
}

inline DatasetKind dataset_kind_from(const std::string& name) {
    if (name == "ball") return DatasetKind::Ball;
    if (name == "sphere") return DatasetKind::Sphere;
    if (name == "gaussian") return DatasetKind::Gaussian;
    if (name == "gmm") return DatasetKind::Gmm;
    throw ParseError("unknown dataset kind: " + name);
}

/// Mixture parameters. Empty `means` asks the generator to draw them.
struct GmmParams {
    std::size_t components = 5;
    Eigen::MatrixXd means;       // one component mean per row, or 0 x 0
    double sigma = 1.0;          // shared spherical deviation
    double mean_box = 4.0;       // means drawn from U[0, mean_box]^d
};

struct Dataset {
    DatasetKind kind = DatasetKind::Ball;
    std::uint64_t seed = 0;
    Eigen::MatrixXd points; // n x d
    std::size_t objects() const { return static_cast<std::size_t>(points.rows()); }
    std::size_t dimension() const { return static_cast<std::size_t>(points.cols()); }
};

namespace detail {

inline Eigen::VectorXd unit_direction(RandomStream& stream, std::size_t d) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d));
    while (true) {
        for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = stream.next_normal();
        const double norm = v.norm();
        if (norm > 1e-12) return v / norm;
    }
}

} // namespace detail

/// Uniform sample from the unit ball: direction uniform on the sphere,
/// radius U^(1/d) so volume shells carry equal mass.
inline Eigen::MatrixXd generate_ball(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0) throw InvalidQueryError("dataset needs n >= 1 and d >= 1");
    RandomStream stream(seed, "data-ball");
    Eigen::MatrixXd points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd dir = detail::unit_direction(stream, d);
        const double radius = std::pow(stream.next_open_double(), 1.0 / static_cast<double>(d));
        points.row(static_cast<Eigen::Index>(i)) = (radius * dir).transpose();
    }
    return points;
}

/// Uniform sample from the surface of the unit sphere in R^d. The surface
/// has intrinsic dimension d - 1. With d = 1 the sphere is the two-point
/// set {-1, +1}, which makes most ordinal structure degenerate; generation
/// proceeds with a warning.
inline Eigen::MatrixXd generate_sphere(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0) throw InvalidQueryError("dataset needs n >= 1 and d >= 1");
    if (d == 1)
        std::cerr << "warning: 1-dimensional sphere collapses to two points\n";
    RandomStream stream(seed, "data-sphere");
    Eigen::MatrixXd points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i)
        points.row(static_cast<Eigen::Index>(i)) = detail::unit_direction(stream, d).transpose();
    return points;
}

/// Standard normal sample.
inline Eigen::MatrixXd generate_gaussian(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0) throw InvalidQueryError("dataset needs n >= 1 and d >= 1");
    RandomStream stream(seed, "data-gaussian");
    Eigen::MatrixXd points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = 0; j < points.cols(); ++j) points(i, j) = stream.next_normal();
    return points;
}

/// Mixture of spherical Gaussians. Component means default to draws from
/// U[0, mean_box]^d; pass explicit means for a controlled fixture.
/// Components are assigned uniformly at random per point.
inline Eigen::MatrixXd generate_gmm(std::size_t n, std::size_t d, std::uint64_t seed,
                                    const GmmParams& params = {}) {
    if (n == 0 || d == 0) throw InvalidQueryError("dataset needs n >= 1 and d >= 1");
    if (params.components == 0) throw InvalidQueryError("mixture needs at least one component");

    Eigen::MatrixXd means = params.means;
    if (means.size() == 0) {
        RandomStream mean_stream(seed, "data-gmm-means");
        means.resize(static_cast<Eigen::Index>(params.components), static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < means.rows(); ++i)
            for (Eigen::Index j = 0; j < means.cols(); ++j)
                means(i, j) = params.mean_box * mean_stream.next_double();
    } else {
        if (static_cast<std::size_t>(means.rows()) != params.components
            || static_cast<std::size_t>(means.cols()) != d)
            throw InvalidQueryError("mixture means must be components x d");
    }

    RandomStream stream(seed, "data-gmm");
    Eigen::MatrixXd points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = stream.next_index(params.components);
        for (std::size_t j = 0; j < d; ++j)
            points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                means(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j))
                + params.sigma * stream.next_normal();
    }
    return points;
}

inline Dataset generate_dataset(DatasetKind kind, std::size_t n, std::size_t d,
                                std::uint64_t seed, const GmmParams& gmm = {}) {
    Dataset dataset;
    dataset.kind = kind;
    dataset.seed = seed;
    switch (kind) {
    case DatasetKind::Ball: dataset.points = generate_ball(n, d, seed); break;
    case DatasetKind::Sphere: dataset.points = generate_sphere(n, d, seed); break;
    case DatasetKind::Gaussian: dataset.points = generate_gaussian(n, d, seed); break;
    case DatasetKind::Gmm: dataset.points = generate_gmm(n, d, seed, gmm); break;
    }
    return dataset;
}

} // namespace ordgeo
