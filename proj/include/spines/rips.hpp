#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spines/complex.hpp"
#include "spines/errors.hpp"
#include "spines/layered.hpp"
#include "spines/simplex.hpp"

namespace spines {

/// Points with uniform dimension; vertex ids are the 0-based line order.
struct point_cloud {
    std::vector<std::vector<double>> points;

    std::size_t size() const { return points.size(); }
    int dimension() const {
        return points.empty() ? 0 : static_cast<int>(points.front().size());
    }

    double distance(std::size_t a, std::size_t b) const {
        const auto& pa = points[a];
        const auto& pb = points[b];
        double sum = 0.0;
        for (std::size_t i = 0; i < pa.size(); ++i) {
            double d = pa[i] - pb[i];
            sum += d * d;
        }
        return std::sqrt(sum);
    }
};

struct rips_params {
    double epsilon = 1.0;   // closed diameter threshold
    int max_dim = 2;        // largest simplex dimension kept
};

/// Reads one point per line, whitespace- or comma-separated; the first
/// non-blank line fixes the dimension. Ragged or non-numeric lines raise a
/// parse error carrying the 1-based line number.
inline point_cloud read_points(std::istream& in,
                               const std::string& source = "<input>") {
    point_cloud cloud;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        for (char& ch : line) {
            if (ch == ',') ch = ' ';
        }
        std::istringstream row(line);
        std::vector<double> coords;
        double value;
        while (row >> value) coords.push_back(value);
        std::string leftover;
        if ((row.fail() && !row.eof()) || (row.clear(), bool(row >> leftover)))
            throw parse_error(source, lineno, "non-numeric token in point row");
        if (coords.empty()) continue;  // blank line
        for (double c : coords) {
            if (!std::isfinite(c))
                throw parse_error(source, lineno, "non-finite coordinate");
        }
        if (!cloud.points.empty() && coords.size() != cloud.points.front().size())
            throw parse_error(source, lineno,
                              "expected " +
                                  std::to_string(cloud.points.front().size()) +
                                  " coordinates, got " +
                                  std::to_string(coords.size()));
        cloud.points.push_back(std::move(coords));
    }
    if (cloud.points.empty()) throw parse_error(source, lineno, "no points found");
    return cloud;
}

inline point_cloud read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return read_points(in, path);
}

/// Reads vertex ids, one integer per line; blank lines are skipped.
inline std::vector<simplex::vertex_id> read_singular_ids(
    std::istream& in, const std::string& source = "<input>") {
    std::vector<simplex::vertex_id> ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        long value;
        if (!(row >> value)) {
            std::string leftover;
            row.clear();
            if (row >> leftover)
                throw parse_error(source, lineno, "non-integer vertex id");
            continue;  // blank line
        }
        std::string leftover;
        if (row >> leftover)
            throw parse_error(source, lineno, "trailing tokens after vertex id");
        if (value < 0 || value > std::numeric_limits<simplex::vertex_id>::max())
            throw parse_error(source, lineno, "vertex id out of range");
        ids.push_back(static_cast<simplex::vertex_id>(value));
    }
    return ids;
}

inline std::vector<simplex::vertex_id> read_singular_ids_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return read_singular_ids(in, path);
}

/// Vietoris-Rips complex: a simplex on vertex set V is present iff
/// |V| - 1 <= max_dim and all pairwise distances within V are <= epsilon.
/// Cliques are grown over the neighborhood graph in vertex order.
inline simplicial_complex vietoris_rips(const point_cloud& cloud,
                                        const rips_params& params) {
    if (cloud.points.empty())
        throw invalid_argument_error("point cloud is empty");
    if (!(params.epsilon > 0.0))
        throw invalid_argument_error("epsilon must be positive");
    if (params.max_dim < 0)
        throw invalid_argument_error("max_dim must be nonnegative");

    std::size_t m = cloud.size();
    // Neighbors with higher index only; cliques are grown in ascending
    // vertex order so each is produced exactly once.
    std::vector<std::vector<simplex::vertex_id>> higher(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (cloud.distance(i, j) <= params.epsilon)
                higher[i].push_back(static_cast<simplex::vertex_id>(j));
        }
    }

    std::vector<simplex> cliques;
    std::vector<simplex::vertex_id> current;
    auto grow = [&](auto&& self, const std::vector<simplex::vertex_id>& cand)
        -> void {
        cliques.emplace_back(current);
        if (static_cast<int>(current.size()) > params.max_dim) return;
        for (std::size_t idx = 0; idx < cand.size(); ++idx) {
            simplex::vertex_id v = cand[idx];
            std::vector<simplex::vertex_id> next;
            for (std::size_t k = idx + 1; k < cand.size(); ++k) {
                simplex::vertex_id w = cand[k];
                const auto& hv = higher[static_cast<std::size_t>(v)];
                if (std::binary_search(hv.begin(), hv.end(), w)) next.push_back(w);
            }
            current.push_back(v);
            self(self, next);
            current.pop_back();
        }
    };
    for (std::size_t v = 0; v < m; ++v) {
        current.assign(1, static_cast<simplex::vertex_id>(v));
        grow(grow, higher[v]);
    }
    return simplicial_complex::from_maximal(cliques);
}

/// Attaches a singular vertex set to a complex; ids must name vertices of
/// the complex, duplicates are dropped.
inline divided_complex to_divided(const simplicial_complex& k,
                                  const std::vector<simplex::vertex_id>& ids) {
    std::set<simplex::vertex_id> singular;
    for (simplex::vertex_id v : ids) {
        if (!k.contains(simplex{v}))
            throw invalid_argument_error("singular id " + std::to_string(v) +
                                         " is not a vertex of the complex");
        singular.insert(v);
    }
    return divided_complex(k, std::move(singular));
}

}  // namespace spines
