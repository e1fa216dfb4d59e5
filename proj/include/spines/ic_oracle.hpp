#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "spines/complex.hpp"
#include "spines/errors.hpp"
#include "spines/perversity.hpp"
#include "spines/simplex.hpp"

namespace spines {

/// Brute-force two-strata intersection Betti numbers over GF(2), by direct
/// basis computation. Deliberately independent of the production pipeline:
/// it recomputes allowability from scratch and uses its own byte-matrix
/// row-echelon routines. Intended as a cross-check on small complexes;
/// refuses inputs above max_simplices.
///
/// For each degree q it computes
///   nullity_q = dim of allowable q-chains whose boundary is allowable,
///   D_q       = full boundary map restricted to a basis of that space,
/// and returns betti[q] = nullity_q - rank(D_q) - rank(D_{q+1}).
namespace oracle_detail {

using byte_matrix = std::vector<std::vector<std::uint8_t>>;  // row-major

inline int row_echelon_rank(byte_matrix m) {
    if (m.empty()) return 0;
    std::size_t ncols = m[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < m.size(); ++col) {
        std::size_t src = pivot_row;
        while (src < m.size() && m[src][col] == 0) ++src;
        if (src == m.size()) continue;
        std::swap(m[pivot_row], m[src]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != pivot_row && m[r][col]) {
                for (std::size_t c = col; c < ncols; ++c) m[r][c] ^= m[pivot_row][c];
            }
        }
        ++pivot_row;
    }
    return static_cast<int>(pivot_row);
}

/// Basis of { x : m x = 0 }, columns of length ncols returned row-major
/// (each inner vector is one basis vector).
inline byte_matrix nullspace(byte_matrix m, std::size_t ncols) {
    std::vector<int> pivot_col_of_row;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < m.size(); ++col) {
        std::size_t src = pivot_row;
        while (src < m.size() && m[src][col] == 0) ++src;
        if (src == m.size()) continue;
        std::swap(m[pivot_row], m[src]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != pivot_row && m[r][col]) {
                for (std::size_t c = col; c < ncols; ++c) m[r][c] ^= m[pivot_row][c];
            }
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++pivot_row;
    }
    std::vector<char> is_pivot(ncols, 0);
    for (int c : pivot_col_of_row) is_pivot[static_cast<std::size_t>(c)] = 1;
    byte_matrix basis;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<std::uint8_t> v(ncols, 0);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
            if (m[r][free_col])
                v[static_cast<std::size_t>(pivot_col_of_row[r])] = 1;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace oracle_detail

inline std::vector<int> brute_force_ic_oracle(
    const simplicial_complex& k, const std::set<simplex::vertex_id>& singular,
    const perversity& p, int codim, std::size_t max_simplices = 200) {
    if (k.empty()) throw invalid_argument_error("oracle needs a nonempty complex");
    if (codim < 1 && !singular.empty())
        throw invalid_argument_error("oracle needs codimension >= 1");
    if (k.size() > max_simplices)
        throw oracle_refused_error("oracle refuses complexes with more than " +
                                   std::to_string(max_simplices) + " simplices");

    int top_dim = k.dim();
    // Simplices by degree, each split into allowable / non-allowable,
    // using the oracle's own count of singular vertices.
    auto allowable = [&](const simplex& s) {
        int in_singular = 0;
        for (simplex::vertex_id v : s.vertices()) {
            if (singular.count(v)) ++in_singular;
        }
        int d = in_singular - 1;
        if (d == -1) return true;
        return d <= s.dim() - codim + p(codim);
    };
    std::vector<std::vector<simplex>> allow(static_cast<std::size_t>(top_dim + 1));
    std::vector<std::vector<simplex>> forbid(static_cast<std::size_t>(top_dim + 1));
    for (const simplex& s : k.cells()) {
        (allowable(s) ? allow : forbid)[static_cast<std::size_t>(s.dim())]
            .push_back(s);
    }

    std::vector<int> nullity(static_cast<std::size_t>(top_dim + 1), 0);
    std::vector<int> boundary_rank(static_cast<std::size_t>(top_dim + 2), 0);
    for (int q = 0; q <= top_dim; ++q) {
        const auto& cols = allow[static_cast<std::size_t>(q)];
        if (cols.empty()) continue;

        // Rows of the constraint matrix: non-allowable (q-1)-simplices.
        oracle_detail::byte_matrix constraint;
        if (q > 0) {
            for (const simplex& row : forbid[static_cast<std::size_t>(q - 1)]) {
                std::vector<std::uint8_t> r(cols.size(), 0);
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    if (row.is_proper_face_of(cols[c])) r[c] = 1;
                }
                constraint.push_back(std::move(r));
            }
        }
        oracle_detail::byte_matrix basis =
            oracle_detail::nullspace(std::move(constraint), cols.size());
        nullity[static_cast<std::size_t>(q)] = static_cast<int>(basis.size());

        if (q > 0 && !basis.empty()) {
            // Full boundary applied to each basis chain, over all
            // (q-1)-simplices of the complex.
            std::vector<simplex> all_rows = allow[static_cast<std::size_t>(q - 1)];
            all_rows.insert(all_rows.end(),
                            forbid[static_cast<std::size_t>(q - 1)].begin(),
                            forbid[static_cast<std::size_t>(q - 1)].end());
            oracle_detail::byte_matrix image;
            for (const auto& chain : basis) {
                std::vector<std::uint8_t> img(all_rows.size(), 0);
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    if (!chain[c]) continue;
                    for (std::size_t r = 0; r < all_rows.size(); ++r) {
                        if (all_rows[r].is_proper_face_of(cols[c])) img[r] ^= 1;
                    }
                }
                image.push_back(std::move(img));
            }
            boundary_rank[static_cast<std::size_t>(q)] =
                oracle_detail::row_echelon_rank(std::move(image));
        }
    }

    std::vector<int> betti(static_cast<std::size_t>(top_dim + 1), 0);
    for (int q = 0; q <= top_dim; ++q) {
        betti[static_cast<std::size_t>(q)] = nullity[static_cast<std::size_t>(q)] -
                                             boundary_rank[static_cast<std::size_t>(q)] -
                                             boundary_rank[static_cast<std::size_t>(q + 1)];
    }
    return betti;
}

}  // namespace spines
