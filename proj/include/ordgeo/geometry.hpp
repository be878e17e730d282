/// @file  geometry.hpp
/// @brief Low-dimensional geometric utilities for diagnostics.
///
/// These helpers work on true coordinates, so they live outside the ordinal
/// core: the library uses them only to measure quantities like the density
/// radius that appear in the accuracy guarantees. Supported up to three
/// dimensions, which covers every diagnostic this project reports.

#pragma once

#include "ordgeo/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace ordgeo {

/// Convex hull of a point set in 1, 2, or 3 dimensions, reduced to a
/// containment test.
class HullRegion {
public:
    /// @param points  one point per row; rows must span the full dimension
    ///                (a degenerate cloud is reported, not guessed at).
    explicit HullRegion(const Eigen::MatrixXd& points) : dim_(static_cast<int>(points.cols())) {
        if (points.rows() < 1) throw InsufficientDataError("hull needs at least one point");
        if (dim_ < 1 || dim_ > 3)
            throw UnsupportedDiagnosticError("hull regions support 1 to 3 dimensions, got "
                                             + std::to_string(dim_));
        scale_ = 1.0;
        for (int j = 0; j < dim_; ++j) {
            lo_.push_back(points.col(j).minCoeff());
            hi_.push_back(points.col(j).maxCoeff());
            scale_ = std::max(scale_, hi_.back() - lo_.back());
        }
        if (dim_ == 2) build_polygon(points);
        if (dim_ == 3) build_polyhedron(points);
    }

    int dim() const { return dim_; }
    double lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
    double hi(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }

    bool contains(const Eigen::VectorXd& q, double tol = 1e-9) const {
        const double t = tol * scale_;
        switch (dim_) {
        case 1:
            return q(0) >= lo_[0] - t && q(0) <= hi_[0] + t;
        case 2: {
            const std::size_t v = poly_.size();
            if (v == 1) return (q - poly_[0]).norm() <= t;
            if (v == 2) return segment_distance(poly_[0], poly_[1], q) <= t;
            for (std::size_t i = 0; i < v; ++i) {
                const Eigen::Vector2d a = poly_[i];
                const Eigen::Vector2d b = poly_[(i + 1) % v];
                const double cross = (b.x() - a.x()) * (q(1) - a.y()) - (b.y() - a.y()) * (q(0) - a.x());
                if (cross < -t * (b - a).norm()) return false;
            }
            return true;
        }
        default:
            for (const Face& f : faces_)
                if (f.normal.dot(q.head<3>()) > f.offset + t) return false;
            return true;
        }
    }

private:
    struct Face {
        Eigen::Vector3d normal; // unit outward
        double offset;          // normal . x <= offset inside
        std::array<std::size_t, 3> v;
    };

    static double segment_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                   const Eigen::VectorXd& q) {
        const Eigen::Vector2d d = b - a;
        const double len2 = d.squaredNorm();
        const Eigen::Vector2d p(q(0), q(1));
        if (len2 == 0.0) return (p - a).norm();
        const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
        return (p - (a + t * d)).norm();
    }

    void build_polygon(const Eigen::MatrixXd& points) {
        std::vector<Eigen::Vector2d> pts;
        pts.reserve(static_cast<std::size_t>(points.rows()));
        for (Eigen::Index i = 0; i < points.rows(); ++i)
            pts.emplace_back(points(i, 0), points(i, 1));
        std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
            return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
        });
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](const auto& a, const auto& b) { return a == b; }),
                  pts.end());
        if (pts.size() <= 2) {
            poly_ = pts;
            return;
        }
        const auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
            return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
        };
        std::vector<Eigen::Vector2d> hull(2 * pts.size());
        std::size_t h = 0;
        for (const auto& p : pts) { // lower chain
            while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
            hull[h++] = p;
        }
        for (std::size_t i = pts.size() - 1, base = h + 1; i-- > 0;) { // upper chain
            while (h >= base && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
            hull[h++] = pts[i];
        }
        hull.resize(h - 1);
        poly_ = std::move(hull); // counterclockwise
    }

    void build_polyhedron(const Eigen::MatrixXd& points) {
        const Eigen::Index n = points.rows();
        const double eps = 1e-12 * std::max(1.0, scale_) * std::max(1.0, scale_);

        // Initial tetrahedron from extreme points.
        Eigen::Index a = 0;
        for (Eigen::Index i = 1; i < n; ++i)
            if (points(i, 0) < points(a, 0)) a = i;
        Eigen::Index b = a;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = (points.row(i) - points.row(a)).squaredNorm();
            if (d > best) { best = d; b = i; }
        }
        const Eigen::Vector3d pa = points.row(a).head<3>();
        const Eigen::Vector3d pb = points.row(b).head<3>();
        Eigen::Index c = a;
        best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = (points.row(i).head<3>().transpose() - pa).cross(pb - pa).squaredNorm();
            if (d > best) { best = d; c = i; }
        }
        const Eigen::Vector3d pc = points.row(c).head<3>();
        const Eigen::Vector3d plane_n = (pb - pa).cross(pc - pa);
        Eigen::Index dpt = a;
        best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = std::abs(plane_n.dot(points.row(i).head<3>().transpose() - pa));
            if (d > best) { best = d; dpt = i; }
        }
        if (best <= eps)
            throw UnsupportedDiagnosticError("3D hull of a degenerate (flat) point set");

        interior_ = (pa + pb + pc + points.row(dpt).head<3>().transpose()) / 4.0;
        std::vector<Face> faces;
        const auto add_face = [&](std::size_t i, std::size_t j, std::size_t k) {
            Face f;
            f.v = {i, j, k};
            const Eigen::Vector3d pi = points.row(static_cast<Eigen::Index>(i)).head<3>();
            const Eigen::Vector3d pj = points.row(static_cast<Eigen::Index>(j)).head<3>();
            const Eigen::Vector3d pk = points.row(static_cast<Eigen::Index>(k)).head<3>();
            f.normal = (pj - pi).cross(pk - pi);
            if (f.normal.dot(interior_ - pi) > 0) {
                std::swap(f.v[1], f.v[2]);
                f.normal = -f.normal;
            }
            f.normal.normalize();
            f.offset = f.normal.dot(pi);
            faces.push_back(f);
        };
        add_face(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c));
        add_face(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(dpt));
        add_face(static_cast<std::size_t>(a), static_cast<std::size_t>(c), static_cast<std::size_t>(dpt));
        add_face(static_cast<std::size_t>(b), static_cast<std::size_t>(c), static_cast<std::size_t>(dpt));

        const double lift = 1e-10 * std::max(1.0, scale_);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Vector3d p = points.row(i).head<3>();
            std::vector<std::size_t> visible;
            for (std::size_t f = 0; f < faces.size(); ++f)
                if (faces[f].normal.dot(p) > faces[f].offset + lift) visible.push_back(f);
            if (visible.empty()) continue;

            // Horizon edges appear on exactly one visible face.
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (const std::size_t f : visible) {
                const auto& v = faces[f].v;
                edges.emplace_back(v[0], v[1]);
                edges.emplace_back(v[1], v[2]);
                edges.emplace_back(v[2], v[0]);
            }
            std::vector<std::pair<std::size_t, std::size_t>> horizon;
            for (const auto& e : edges) {
                bool paired = false;
                for (const auto& o : edges)
                    if (o.first == e.second && o.second == e.first) { paired = true; break; }
                if (!paired) horizon.push_back(e);
            }
            std::vector<Face> kept;
            for (std::size_t f = 0; f < faces.size(); ++f)
                if (std::find(visible.begin(), visible.end(), f) == visible.end())
                    kept.push_back(faces[f]);
            faces = std::move(kept);
            for (const auto& e : horizon)
                add_face(e.first, e.second, static_cast<std::size_t>(i));
        }
        faces_ = std::move(faces);
    }

    int dim_;
    double scale_;
    std::vector<double> lo_, hi_;
    std::vector<Eigen::Vector2d> poly_;
    std::vector<Face> faces_;
    Eigen::Vector3d interior_ = Eigen::Vector3d::Zero();
};

/// Largest pairwise distance among the rows of `points` restricted to
/// `subset` (all rows when the subset is empty).
inline double set_diameter(const Eigen::MatrixXd& points,
                           std::span<const std::size_t> subset = {}) {
    std::vector<std::size_t> all;
    if (subset.empty()) {
        all.resize(static_cast<std::size_t>(points.rows()));
        std::iota(all.begin(), all.end(), std::size_t{0});
        subset = all;
    }
    double best = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            best = std::max(best, (points.row(static_cast<Eigen::Index>(subset[i]))
                                   - points.row(static_cast<Eigen::Index>(subset[j]))).norm());
    return best;
}

/// Exact distance from q to the convex hull of a few rows of `points`.
/// Enumerates faces (subsets of size <= d+1): the nearest hull point lies
/// in the relative interior of one of them, where the affine projection
/// has nonnegative barycentric coordinates.
inline double distance_to_hull(const Eigen::MatrixXd& points,
                               std::span<const std::size_t> vertices,
                               const Eigen::VectorXd& q) {
    const int d = static_cast<int>(points.cols());
    const std::size_t v = vertices.size();
    if (v == 0) throw InsufficientDataError("hull distance needs at least one vertex");
    if (v > 20) throw UnsupportedDiagnosticError("hull distance supports few vertices only");

    double best = std::numeric_limits<double>::infinity();
    const std::size_t max_size = std::min<std::size_t>(v, static_cast<std::size_t>(d) + 1);
    for (std::uint32_t mask = 1; mask < (1u << v); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
        if (size > max_size) continue;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < v; ++i)
            if (mask & (1u << i)) s.push_back(vertices[i]);

        const Eigen::VectorXd v0 = points.row(static_cast<Eigen::Index>(s[0])).transpose();
        if (size == 1) {
            best = std::min(best, (q - v0).norm());
            continue;
        }
        Eigen::MatrixXd basis(d, static_cast<Eigen::Index>(size - 1));
        for (std::size_t i = 1; i < size; ++i)
            basis.col(static_cast<Eigen::Index>(i - 1)) =
                points.row(static_cast<Eigen::Index>(s[i])).transpose() - v0;
        const Eigen::MatrixXd gram = basis.transpose() * basis;
        const Eigen::VectorXd rhs = basis.transpose() * (q - v0);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
        if (!lu.isInvertible()) continue; // degenerate face; subsets cover it
        const Eigen::VectorXd t = lu.solve(rhs);
        const double t0 = 1.0 - t.sum();
        if (t0 < -1e-9 || (t.array() < -1e-9).any()) continue;
        best = std::min(best, (q - (v0 + basis * t)).norm());
    }
    return best;
}

namespace detail {

/// Uniform-grid bins over the data for nearest-point queries.
class PointBins {
public:
    PointBins(const Eigen::MatrixXd& points, double cell) : points_(points), cell_(cell) {
        const int d = static_cast<int>(points.cols());
        lo_.resize(d);
        dims_.resize(d);
        for (int j = 0; j < d; ++j) {
            lo_[j] = points.col(j).minCoeff();
            const double hi = points.col(j).maxCoeff();
            dims_[j] = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>((hi - lo_[j]) / cell_) + 1);
        }
        bins_.resize(total());
        for (Eigen::Index i = 0; i < points.rows(); ++i)
            bins_[flat(cell_of(points.row(i)))].push_back(i);
    }

    /// Distance from q to the nearest data point.
    double nearest(const Eigen::VectorXd& q) const {
        const auto base = cell_of(q.transpose());
        double best = std::numeric_limits<double>::infinity();
        const int d = static_cast<int>(lo_.size());
        for (std::ptrdiff_t ring = 0;; ++ring) {
            if (best < std::numeric_limits<double>::infinity()
                && static_cast<double>(ring - 1) * cell_ > best)
                return best;
            if (!scan_ring(base, ring, q, best) && ring > longest_span())
                return best; // grid exhausted
        }
    }

    /// Number of data points within `radius` of q.
    std::size_t count_within(const Eigen::VectorXd& q, double radius) const {
        const auto base = cell_of(q.transpose());
        const auto reach = static_cast<std::ptrdiff_t>(radius / cell_) + 1;
        std::size_t count = 0;
        std::vector<std::ptrdiff_t> idx(lo_.size());
        count_rec(base, reach, 0, idx, q, radius, count);
        return count;
    }

private:
    std::vector<std::ptrdiff_t> cell_of(const Eigen::RowVectorXd& p) const {
        std::vector<std::ptrdiff_t> c(lo_.size());
        for (std::size_t j = 0; j < lo_.size(); ++j) {
            auto v = static_cast<std::ptrdiff_t>((p(static_cast<Eigen::Index>(j)) - lo_[j]) / cell_);
            c[j] = std::clamp<std::ptrdiff_t>(v, 0, dims_[j] - 1);
        }
        return c;
    }

    std::size_t total() const {
        std::size_t t = 1;
        for (const auto d : dims_) t *= static_cast<std::size_t>(d);
        return t;
    }

    std::ptrdiff_t longest_span() const {
        return *std::max_element(dims_.begin(), dims_.end());
    }

    std::size_t flat(const std::vector<std::ptrdiff_t>& c) const {
        std::size_t f = 0;
        for (std::size_t j = 0; j < c.size(); ++j)
            f = f * static_cast<std::size_t>(dims_[j]) + static_cast<std::size_t>(c[j]);
        return f;
    }

    bool scan_ring(const std::vector<std::ptrdiff_t>& base, std::ptrdiff_t ring,
                   const Eigen::VectorXd& q, double& best) const {
        bool touched = false;
        std::vector<std::ptrdiff_t> idx(lo_.size());
        scan_rec(base, ring, 0, false, idx, q, best, touched);
        return touched;
    }

    void scan_rec(const std::vector<std::ptrdiff_t>& base, std::ptrdiff_t ring, std::size_t axis,
                  bool on_shell, std::vector<std::ptrdiff_t>& idx, const Eigen::VectorXd& q,
                  double& best, bool& touched) const {
        if (axis == lo_.size()) {
            if (!on_shell && ring > 0) return; // interior already scanned
            touched = true;
            for (const Eigen::Index i : bins_[flat(idx)]) {
                const double dist = (points_.row(i).transpose() - q).norm();
                best = std::min(best, dist);
            }
            return;
        }
        for (std::ptrdiff_t off = -ring; off <= ring; ++off) {
            const std::ptrdiff_t v = base[axis] + off;
            if (v < 0 || v >= dims_[axis]) continue;
            idx[axis] = v;
            scan_rec(base, ring, axis + 1, on_shell || std::abs(off) == ring, idx, q, best, touched);
        }
    }

    void count_rec(const std::vector<std::ptrdiff_t>& base, std::ptrdiff_t reach, std::size_t axis,
                   std::vector<std::ptrdiff_t>& idx, const Eigen::VectorXd& q, double radius,
                   std::size_t& count) const {
        if (axis == lo_.size()) {
            for (const Eigen::Index i : bins_[flat(idx)])
                if ((points_.row(i).transpose() - q).norm() <= radius) ++count;
            return;
        }
        for (std::ptrdiff_t off = -reach; off <= reach; ++off) {
            const std::ptrdiff_t v = base[axis] + off;
            if (v < 0 || v >= dims_[axis]) continue;
            idx[axis] = v;
            count_rec(base, reach, axis + 1, idx, q, radius, count);
        }
    }

    const Eigen::MatrixXd& points_;
    double cell_;
    std::vector<double> lo_;
    std::vector<std::ptrdiff_t> dims_;
    std::vector<std::vector<Eigen::Index>> bins_;
};

} // namespace detail

struct EmptyBall {
    double radius = 0.0;
    Eigen::VectorXd center;
    double grid_step = 0.0;
};

/// Largest empty ball: grid search over centers inside `region` for the
/// greatest distance to the nearest of `points`. `resolution` is the number
/// of grid steps across the region's longest side. The true optimum over
/// continuous centers exceeds the returned radius by at most half a grid
/// cell diagonal (the nearest-point distance is 1-Lipschitz).
inline EmptyBall largest_empty_ball(const Eigen::MatrixXd& points, const HullRegion& region,
                                    std::size_t resolution = 200) {
    const int d = region.dim();
    if (points.rows() < 1) throw InsufficientDataError("empty-ball search needs data");
    if (resolution < 2) throw InvalidQueryError("grid resolution too small");

    double longest = 0.0;
    for (int j = 0; j < d; ++j) longest = std::max(longest, region.hi(j) - region.lo(j));
    if (longest == 0.0) {
        EmptyBall none;
        none.center = points.row(0).transpose();
        return none;
    }
    const double step = longest / static_cast<double>(resolution);
    detail::PointBins bins(points, std::max(step, longest / 32.0));

    std::vector<std::size_t> counts(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        counts[static_cast<std::size_t>(j)] =
            static_cast<std::size_t>((region.hi(j) - region.lo(j)) / step) + 1;

    EmptyBall ball;
    ball.grid_step = step;
    ball.center = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd q(d);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        for (int j = 0; j < d; ++j)
            q(j) = region.lo(j) + static_cast<double>(idx[static_cast<std::size_t>(j)]) * step;
        if (region.contains(q)) {
            const double r = bins.nearest(q);
            if (r > ball.radius) {
                ball.radius = r;
                ball.center = q;
            }
        }
        int axis = 0;
        while (axis < d) {
            if (++idx[static_cast<std::size_t>(axis)] < counts[static_cast<std::size_t>(axis)]) break;
            idx[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == d) break;
    }
    return ball;
}

} // namespace ordgeo
