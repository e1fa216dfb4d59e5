#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spines/errors.hpp"

namespace spines {

/// Column-major matrix over GF(2). Columns are stored either as dense
/// 64-bit word arrays or as sorted sparse row-index lists; the dense form
/// is used while the total bit count fits the budget. Both forms implement
/// identical semantics.
class gf2_col_matrix {
public:
    static constexpr std::size_t default_dense_bit_budget = std::size_t{1} << 28;

    gf2_col_matrix(int nrows, int ncols,
                   std::size_t dense_bit_budget = default_dense_bit_budget)
        : nrows_(nrows), ncols_(ncols) {
        if (nrows < 0 || ncols < 0)
            throw invalid_argument_error("matrix dimensions must be nonnegative");
        dense_ = static_cast<std::size_t>(nrows) * static_cast<std::size_t>(ncols) <=
                 dense_bit_budget;
        if (dense_) {
            words_per_col_ = static_cast<std::size_t>((nrows + 63) / 64);
            dense_cols_.assign(static_cast<std::size_t>(ncols) * words_per_col_, 0);
        } else {
            sparse_cols_.resize(static_cast<std::size_t>(ncols));
        }
    }

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }
    bool is_dense() const { return dense_; }

    void set(int r, int c) {
        check_index(r, c);
        if (dense_) {
            word(c, r / 64) |= std::uint64_t{1} << (r % 64);
        } else {
            auto& col = sparse_cols_[static_cast<std::size_t>(c)];
            auto it = std::lower_bound(col.begin(), col.end(), r);
            if (it == col.end() || *it != r) col.insert(it, r);
        }
    }

    bool get(int r, int c) const {
        check_index(r, c);
        if (dense_) {
            return (word(c, r / 64) >> (r % 64)) & 1;
        }
        const auto& col = sparse_cols_[static_cast<std::size_t>(c)];
        return std::binary_search(col.begin(), col.end(), r);
    }

    /// Largest set row index of column c, or -1 for a zero column.
    int low(int c) const {
        check_col(c);
        if (dense_) {
            for (std::size_t w = words_per_col_; w-- > 0;) {
                std::uint64_t bits = word(c, w);
                if (bits) return static_cast<int>(w * 64 + 63 - std::countl_zero(bits));
            }
            return -1;
        }
        const auto& col = sparse_cols_[static_cast<std::size_t>(c)];
        return col.empty() ? -1 : col.back();
    }

    bool column_is_zero(int c) const { return low(c) == -1; }

    /// dst ^= src.
    void add_col(int src, int dst) {
        check_col(src);
        check_col(dst);
        if (dense_) {
            const std::uint64_t* s = &dense_cols_[static_cast<std::size_t>(src) *
                                                  words_per_col_];
            std::uint64_t* d = &dense_cols_[static_cast<std::size_t>(dst) *
                                            words_per_col_];
            for (std::size_t w = 0; w < words_per_col_; ++w) d[w] ^= s[w];
        } else {
            const auto& s = sparse_cols_[static_cast<std::size_t>(src)];
            auto& d = sparse_cols_[static_cast<std::size_t>(dst)];
            std::vector<std::int32_t> merged;
            merged.reserve(s.size() + d.size());
            std::set_symmetric_difference(s.begin(), s.end(), d.begin(), d.end(),
                                          std::back_inserter(merged));
            d = std::move(merged);
        }
    }

    /// Set row indices of column c in ascending order.
    std::vector<std::int32_t> column_rows(int c) const {
        check_col(c);
        if (!dense_) return sparse_cols_[static_cast<std::size_t>(c)];
        std::vector<std::int32_t> out;
        for (std::size_t w = 0; w < words_per_col_; ++w) {
            std::uint64_t bits = word(c, w);
            while (bits) {
                int b = std::countr_zero(bits);
                out.push_back(static_cast<std::int32_t>(w * 64 + b));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Rank over GF(2), computed on a scratch copy by greedy pivoting on
    /// column lows.
    int rank() const {
        gf2_col_matrix scratch = *this;
        std::unordered_map<int, int> pivot_col_for_row;
        int rank = 0;
        for (int c = 0; c < ncols_; ++c) {
            int l = scratch.low(c);
            while (l != -1) {
                auto it = pivot_col_for_row.find(l);
                if (it == pivot_col_for_row.end()) break;
                scratch.add_col(it->second, c);
                l = scratch.low(c);
            }
            if (l != -1) {
                pivot_col_for_row.emplace(l, c);
                ++rank;
            }
        }
        return rank;
    }

private:
    void check_col(int c) const {
        if (c < 0 || c >= ncols_)
            throw invalid_argument_error("column index out of range");
    }

    void check_index(int r, int c) const {
        check_col(c);
        if (r < 0 || r >= nrows_)
            throw invalid_argument_error("row index out of range");
    }

    std::uint64_t& word(int c, std::size_t w) {
        return dense_cols_[static_cast<std::size_t>(c) * words_per_col_ + w];
    }
    const std::uint64_t& word(int c, std::size_t w) const {
        return dense_cols_[static_cast<std::size_t>(c) * words_per_col_ + w];
    }

    int nrows_;
    int ncols_;
    bool dense_ = true;
    std::size_t words_per_col_ = 0;
    std::vector<std::uint64_t> dense_cols_;
    std::vector<std::vector<std::int32_t>> sparse_cols_;
};

}  // namespace spines
