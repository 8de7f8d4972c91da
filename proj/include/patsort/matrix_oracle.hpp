#pragma once

#include "patsort/bigint.hpp"
#include "patsort/core.hpp"

namespace patsort {

// 0/1 matrix with columns 1..cols() left to right and rows 1..rows()
// numbered bottom to top, matching the permutation-matrix convention
// (row index = value). Dimensions may be zero.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(int cols, int rows);
    // Permutation matrix of p: a 1 at (i, p_i) for each column i.
    static BinaryMatrix from_pattern(const Pattern& p);

    int cols() const { return cols_; }
    int rows() const { return rows_; }
    void set(int col, int row); // 1-based, idempotent
    bool at(int col, int row) const;
    std::size_t ones() const;
    // Rows holding a 1 in this column, ascending.
    const std::vector<int>& column(int col) const;

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    int cols_ = 0, rows_ = 0;
    std::vector<std::vector<int>> col_rows_;
};

// True iff P can be obtained from M by deleting rows and columns and
// clearing 1-entries; equivalently, there are strictly increasing column
// and row maps under which every 1 of P lands on a 1 of M. P must contain
// at least one 1-entry.
bool matrix_contains(const BinaryMatrix& M, const BinaryMatrix& P);

namespace detail {
// Reference implementation used to cross-check the permutation fast path:
// enumerates row subsets and embeds columns greedily.
bool matrix_contains_subsets(const BinaryMatrix& M, const BinaryMatrix& P);
} // namespace detail

// Maximum number of 1-entries of an n x n matrix avoiding the permutation
// matrix of p. Exhaustive branch and bound; n above n_max is refused.
int ex_brute(const Pattern& p, int n, int n_max = 5);

// Number of permutations of length n avoiding p. Enumerates all n!
// permutations; n above 10 is refused.
BigInt count_avoiders(const Pattern& p, int n);

// Number of m x m matrices with exactly n 1-entries avoiding p. Enumerates
// all cell subsets; caps are refused, not truncated.
BigInt count_T(const Pattern& p, int m, int n, int m_max = 4, int n_max = 6);

} // namespace patsort
