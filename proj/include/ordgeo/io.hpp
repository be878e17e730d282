/// @file  io.hpp
/// @brief File formats: CSV point clouds, triple lists, JSON reports.
///
/// Numeric output is deterministic: doubles print with %.17g, which round
/// trips exactly, and nothing here stamps a timestamp, so rerunning a
/// command rewrites byte-identical files.

#pragma once

#include "ordgeo/basis.hpp"
#include "ordgeo/errors.hpp"
#include "ordgeo/refine.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ordgeo {

namespace detail {

inline std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

inline std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open for reading: " + path);
    return in;
}

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    return out;
}

} // namespace detail

/// Writes one point per line, coordinates comma separated, no header.
inline void write_points_csv(const std::string& path, const Eigen::MatrixXd& points) {
    auto out = detail::open_for_write(path);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index j = 0; j < points.cols(); ++j) {
            if (j > 0) out << ',';
            out << detail::format_double(points(i, j));
        }
        out << '\n';
    }
    if (!out) throw ParseError("write failed: " + path);
}

/// Reads a headerless CSV of points. Blank lines and lines starting with
/// '#' are skipped; every remaining row must have the same width.
inline Eigen::MatrixXd read_points_csv(const std::string& path) {
    auto in = detail::open_for_read(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\t')) ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (row.empty())
            throw ParseError(path + ":" + std::to_string(lineno) + ": empty row");
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(path + ":" + std::to_string(lineno) + ": inconsistent column count");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": no data rows");
    Eigen::MatrixXd points(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return points;
}

/// Writes triples as "head,closer,farther" lines with a leading comment.
inline void write_triples(const std::string& path, const TripleSet& triples) {
    auto out = detail::open_for_write(path);
    out << "# head,closer,farther over " << triples.objects() << " objects\n";
    for (const Triple& t : triples.items())
        out << t.head << ',' << t.closer << ',' << t.farther << '\n';
    if (!out) throw ParseError("write failed: " + path);
}

/// Reads a triple file written by write_triples. `n` bounds the indices.
inline TripleSet read_triples(const std::string& path, std::size_t n) {
    auto in = detail::open_for_read(path);
    TripleSet triples(n);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t a = 0, b = 0, c = 0;
        if (std::sscanf(line.c_str(), "%zu,%zu,%zu", &a, &b, &c) != 3)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected head,closer,farther");
        try {
            triples.add({a, b, c});
        } catch (const InvalidQueryError& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return triples;
}

/// JSON round trip for a chosen basis: endpoints, members, and bookkeeping.
inline nlohmann::json basis_to_json(const Basis& basis) {
    nlohmann::json j;
    j["dimension_estimate"] = basis.dimension_estimate();
    j["comparisons_used"] = basis.comparisons_used;
    j["affine_set"] = basis.affine_set;
    j["axes"] = nlohmann::json::array();
    for (const Axis& axis : basis.axes) {
        nlohmann::json a;
        a["first_endpoint"] = axis.first_endpoint;
        a["second_endpoint"] = axis.second_endpoint;
        a["members"] = axis.members;
        j["axes"].push_back(std::move(a));
    }
    return j;
}

inline Basis basis_from_json(const nlohmann::json& j) {
    Basis basis;
    basis.comparisons_used = j.at("comparisons_used").get<std::size_t>();
    basis.affine_set = j.at("affine_set").get<std::vector<std::size_t>>();
    for (const auto& a : j.at("axes")) {
        Axis axis;
        axis.first_endpoint = a.at("first_endpoint").get<std::size_t>();
        axis.second_endpoint = a.at("second_endpoint").get<std::size_t>();
        axis.members = a.at("members").get<std::vector<std::size_t>>();
        basis.axes.push_back(std::move(axis));
    }
    return basis;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    auto out = detail::open_for_write(path);
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("write failed: " + path);
}

inline nlohmann::json read_json(const std::string& path) {
    auto in = detail::open_for_read(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

/// Result row for one embedding run. Serializes with a fixed key set so
/// downstream tabulation never needs per-method cases.
struct RunReport {
    std::string method;
    std::string dataset;
    std::size_t d = 0;
    std::size_t d_hat = 0;
    std::size_t comparisons = 0;
    double tau = 0.0;
    double knn = 0.0;
    double rmse = 0.0;
    nlohmann::json metadata = nlohmann::json::object();
};

inline nlohmann::json report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["method"] = report.method;
    j["dataset"] = report.dataset;
    j["d"] = report.d;
    j["d_hat"] = report.d_hat;
    j["comparisons"] = report.comparisons;
    j["tau"] = report.tau;
    j["knn"] = report.knn;
    j["rmse"] = report.rmse;
    j["metadata"] = report.metadata;
    return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
    RunReport report;
    report.method = j.at("method").get<std::string>();
    report.dataset = j.at("dataset").get<std::string>();
    report.d = j.at("d").get<std::size_t>();
    report.d_hat = j.at("d_hat").get<std::size_t>();
    report.comparisons = j.at("comparisons").get<std::size_t>();
    report.tau = j.at("tau").get<double>();
    report.knn = j.at("knn").get<double>();
    report.rmse = j.at("rmse").get<double>();
    if (j.contains("metadata")) report.metadata = j.at("metadata");
    return report;
}

} // namespace ordgeo
