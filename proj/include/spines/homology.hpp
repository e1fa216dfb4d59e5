#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spines/complex.hpp"
#include "spines/errors.hpp"
#include "spines/gf2.hpp"
#include "spines/layered.hpp"
#include "spines/perversity.hpp"
#include "spines/simplex.hpp"

namespace spines {

/// A complex with a distinguished singular subcomplex of fixed codimension,
/// inside an ambient dimension n. The singular part must be a full
/// subcomplex; callers may assume fullness instead, in which case membership
/// is approximated by vertex counting and the result is flagged.
class filtered_complex {
public:
    static filtered_complex make(simplicial_complex k, const simplicial_complex& s,
                                 int codim, std::optional<int> n = std::nullopt,
                                 bool assume_full = false) {
        if (k.empty())
            throw invalid_argument_error("filtered complex needs a nonempty complex");
        if (!assume_full) {
            auto witness = simplicial_complex::fullness_witness(k, s);
            if (witness)
                throw invalid_argument_error(
                    "singular part is not a full subcomplex (missing " +
                    witness->to_string() + "); pass assume_full to override");
        } else {
            // Still insist on the subcomplex relation itself.
            for (const simplex& cell : s.cells()) {
                if (!k.contains(cell))
                    throw not_subcomplex_error("singular simplex " + cell.to_string() +
                                               " is not in the complex");
            }
        }
        std::set<simplex::vertex_id> singular;
        for (simplex::vertex_id v : s.vertex_set()) singular.insert(v);
        return finish(std::move(k), std::move(singular), codim, n, assume_full);
    }

    static filtered_complex from_divided(const divided_complex& d, int codim,
                                         std::optional<int> n = std::nullopt) {
        // The induced singular subcomplex is full by construction.
        return finish(d.complex(), d.singular_vertices(), codim, n, false);
    }

    const simplicial_complex& complex() const { return k_; }
    const std::set<simplex::vertex_id>& singular_vertices() const { return singular_; }
    int ambient_dim() const { return n_; }
    int codim() const { return codim_; }
    bool fullness_assumed() const { return assumed_full_; }

    /// Dimension of the induced singular subcomplex; -1 when empty.
    int singular_dim() const { return singular_dim_of(k_, singular_); }

    /// Difference of geometric dimensions, the default codimension when the
    /// caller does not supply one. Requires a nonempty singular part.
    static int geometric_codim(const simplicial_complex& k,
                               const std::set<simplex::vertex_id>& singular) {
        int sdim = singular_dim_of(k, singular);
        if (sdim < 0)
            throw invalid_argument_error(
                "geometric codimension needs a nonempty singular part");
        return k.dim() - sdim;
    }

    int count_singular(const simplex& cell) const {
        int n = 0;
        for (simplex::vertex_id v : cell.vertices()) {
            if (singular_.count(v)) ++n;
        }
        return n;
    }

private:
    static int singular_dim_of(const simplicial_complex& k,
                               const std::set<simplex::vertex_id>& singular) {
        int best = -1;
        for (const simplex& cell : k.cells()) {
            if (cell.dim() <= best) continue;
            bool inside = true;
            for (simplex::vertex_id v : cell.vertices()) {
                if (!singular.count(v)) {
                    inside = false;
                    break;
                }
            }
            if (inside) best = cell.dim();
        }
        return best;
    }

    static filtered_complex finish(simplicial_complex k,
                                   std::set<simplex::vertex_id> singular, int codim,
                                   std::optional<int> n, bool assumed_full) {
        if (!singular.empty() && codim < 1)
            throw invalid_argument_error(
                "codimension must be >= 1 when the singular part is nonempty");
        filtered_complex fc;
        fc.k_ = std::move(k);
        fc.singular_ = std::move(singular);
        fc.codim_ = codim;
        fc.n_ = n.value_or(fc.k_.dim());
        if (fc.n_ < fc.k_.dim())
            throw invalid_argument_error(
                "ambient dimension " + std::to_string(fc.n_) +
                " is below the complex dimension " + std::to_string(fc.k_.dim()));
        fc.assumed_full_ = assumed_full;
        return fc;
    }

    filtered_complex() = default;

    simplicial_complex k_;
    std::set<simplex::vertex_id> singular_;
    int n_ = 0;
    int codim_ = 1;
    bool assumed_full_ = false;
};

/// Whether an i-simplex meets the singular part in at most the dimension
/// allowed by the perversity: dim(cell ∩ S) <= i - codim + p(codim), with
/// an empty intersection always allowed.
inline bool is_allowable(const filtered_complex& fc, const perversity& p,
                         const simplex& cell) {
    int d = fc.count_singular(cell) - 1;
    if (d == -1) return true;
    return d <= cell.dim() - fc.codim() + p(fc.codim());
}

/// Degree-q incidence matrix: columns are the allowable q-simplices,
/// rows are all (q-1)-simplices with the allowable ones first (index
/// 0..r); within each block rows and columns are in lexicographic order.
struct incidence_matrix_result {
    int degree = 0;
    std::vector<simplex> columns;
    std::vector<simplex> rows;
    int r = -1;  // index of the last allowable row; -1 when none
    gf2_col_matrix matrix{0, 0};
};

inline incidence_matrix_result incidence_matrix(
    const filtered_complex& fc, const perversity& p, int degree,
    std::size_t dense_bit_budget = gf2_col_matrix::default_dense_bit_budget) {
    if (degree < 0) throw invalid_argument_error("degree must be >= 0");
    incidence_matrix_result out;
    out.degree = degree;
    std::vector<simplex> forbidden_rows;
    for (const simplex& cell : fc.complex().cells()) {
        if (cell.dim() == degree && is_allowable(fc, p, cell))
            out.columns.push_back(cell);
        if (cell.dim() == degree - 1) {
            (is_allowable(fc, p, cell) ? out.rows : forbidden_rows).push_back(cell);
        }
    }
    out.r = static_cast<int>(out.rows.size()) - 1;
    out.rows.insert(out.rows.end(), forbidden_rows.begin(), forbidden_rows.end());
    out.matrix = gf2_col_matrix(static_cast<int>(out.rows.size()),
                                static_cast<int>(out.columns.size()),
                                dense_bit_budget);
    for (int j = 0; j < static_cast<int>(out.columns.size()); ++j) {
        for (int i = 0; i < static_cast<int>(out.rows.size()); ++i) {
            if (out.rows[static_cast<std::size_t>(i)].is_proper_face_of(
                    out.columns[static_cast<std::size_t>(j)]))
                out.matrix.set(i, j);
        }
    }
    return out;
}

/// Result of the column reduction: columns whose boundary sticks out of the
/// allowable rows get cancelled against earlier columns sharing the same
/// low; what remains with low <= r spans the degree-q chain group.
struct reduced_boundary {
    int degree = 0;
    std::vector<simplex> column_basis;
    std::vector<simplex> rows;
    int r = -1;
    gf2_col_matrix matrix{0, 0};
    std::vector<int> surviving_columns;           // low <= r, ascending
    std::vector<std::pair<int, int>> ops;         // (src, dst) additions applied
};

inline reduced_boundary matrix_reduction(const incidence_matrix_result& in) {
    reduced_boundary out;
    out.degree = in.degree;
    out.column_basis = in.columns;
    out.rows = in.rows;
    out.r = in.r;
    out.matrix = in.matrix;
    // Left to right; partners to the left are final, so the surviving lows
    // beyond r come out pairwise distinct.
    int ncols = out.matrix.cols();
    for (int j = 1; j < ncols; ++j) {
        while (true) {
            int l = out.matrix.low(j);
            if (l <= out.r) break;
            int partner = -1;
            for (int i = 0; i < j; ++i) {
                if (out.matrix.low(i) == l) {
                    partner = i;
                    break;
                }
            }
            if (partner == -1) break;
            out.matrix.add_col(partner, j);
            out.ops.emplace_back(partner, j);
        }
    }
    for (int j = 0; j < ncols; ++j) {
        if (out.matrix.low(j) <= out.r) out.surviving_columns.push_back(j);
    }
    return out;
}

namespace detail {

/// Rank of the reduced matrix restricted to surviving columns and allowable
/// rows (0..r); surviving columns have no entries beyond row r.
inline int trimmed_rank(const reduced_boundary& rb, std::size_t dense_bit_budget) {
    if (rb.r < 0 || rb.surviving_columns.empty()) return 0;
    gf2_col_matrix trimmed(rb.r + 1, static_cast<int>(rb.surviving_columns.size()),
                           dense_bit_budget);
    for (int j = 0; j < static_cast<int>(rb.surviving_columns.size()); ++j) {
        for (std::int32_t row : rb.matrix.column_rows(rb.surviving_columns[
                 static_cast<std::size_t>(j)])) {
            trimmed.set(row, j);
        }
    }
    return trimmed.rank();
}

}  // namespace detail

/// Intersection Betti numbers over GF(2), indexed 0..dim K.
inline std::vector<int> intersection_betti(
    const filtered_complex& fc, const perversity& p,
    std::size_t dense_bit_budget = gf2_col_matrix::default_dense_bit_budget) {
    int top_dim = fc.complex().dim();
    std::vector<int> surviving(static_cast<std::size_t>(top_dim + 1), 0);
    std::vector<int> trimmed_rank(static_cast<std::size_t>(top_dim + 2), 0);
    for (int q = 0; q <= top_dim; ++q) {
        reduced_boundary rb =
            matrix_reduction(incidence_matrix(fc, p, q, dense_bit_budget));
        surviving[static_cast<std::size_t>(q)] =
            static_cast<int>(rb.surviving_columns.size());
        trimmed_rank[static_cast<std::size_t>(q)] =
            detail::trimmed_rank(rb, dense_bit_budget);
    }
    std::vector<int> betti(static_cast<std::size_t>(top_dim + 1), 0);
    for (int q = 0; q <= top_dim; ++q) {
        betti[static_cast<std::size_t>(q)] =
            surviving[static_cast<std::size_t>(q)] -
            trimmed_rank[static_cast<std::size_t>(q)] -
            trimmed_rank[static_cast<std::size_t>(q + 1)];
    }
    return betti;
}

/// Ordinary GF(2) Betti numbers: the same pipeline with nothing singular.
inline std::vector<int> ordinary_betti(
    const simplicial_complex& k,
    std::size_t dense_bit_budget = gf2_col_matrix::default_dense_bit_budget) {
    filtered_complex fc = filtered_complex::make(k, simplicial_complex{}, 1);
    return intersection_betti(fc, perversity::zero(), dense_bit_budget);
}

/// Drops trailing zeros; empty stays empty. Useful when comparing Betti
/// vectors of complexes with different top dimensions.
inline std::vector<int> normalized_betti(std::vector<int> betti) {
    while (!betti.empty() && betti.back() == 0) betti.pop_back();
    return betti;
}

}  // namespace spines
