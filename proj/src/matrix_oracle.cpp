#include "patsort/matrix_oracle.hpp"

#include <algorithm>
#include <utility>

namespace patsort {

BigInt bigint_pow(BigInt base, unsigned exp) {
    BigInt result = 1;
    while (exp) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

BinaryMatrix::BinaryMatrix(int cols, int rows) : cols_(cols), rows_(rows) {
    if (cols < 0 || rows < 0)
        throw std::invalid_argument("BinaryMatrix: negative dimension");
    col_rows_.resize(static_cast<std::size_t>(cols));
}

BinaryMatrix BinaryMatrix::from_pattern(const Pattern& p) {
    BinaryMatrix m(p.size(), p.size());
    for (int i = 0; i < p.size(); ++i) m.set(i + 1, p[i]);
    return m;
}

void BinaryMatrix::set(int col, int row) {
    if (col < 1 || col > cols_ || row < 1 || row > rows_)
        throw std::out_of_range("BinaryMatrix::set: cell outside matrix");
    auto& rows = col_rows_[static_cast<std::size_t>(col - 1)];
    auto it = std::lower_bound(rows.begin(), rows.end(), row);
    if (it == rows.end() || *it != row) rows.insert(it, row);
}

bool BinaryMatrix::at(int col, int row) const {
    if (col < 1 || col > cols_ || row < 1 || row > rows_)
        throw std::out_of_range("BinaryMatrix::at: cell outside matrix");
    const auto& rows = col_rows_[static_cast<std::size_t>(col - 1)];
    return std::binary_search(rows.begin(), rows.end(), row);
}

std::size_t BinaryMatrix::ones() const {
    std::size_t total = 0;
    for (const auto& rows : col_rows_) total += rows.size();
    return total;
}

const std::vector<int>& BinaryMatrix::column(int col) const {
    if (col < 1 || col > cols_)
        throw std::out_of_range("BinaryMatrix::column: column outside matrix");
    return col_rows_[static_cast<std::size_t>(col - 1)];
}

namespace {

struct Cell {
    int col, row;
};

// Slot bound indices over a permutation pattern, as in contains_pattern but
// applied to cell rows.
struct RowBounds {
    std::vector<int> pred, succ;
};

RowBounds row_bounds(const std::vector<int>& q) {
    const int k = static_cast<int>(q.size());
    RowBounds b;
    b.pred.assign(static_cast<std::size_t>(k), -1);
    b.succ.assign(static_cast<std::size_t>(k), -1);
    for (int j = 0; j < k; ++j) {
        int best_lo = 0, best_hi = k + 1;
        for (int a = 0; a < j; ++a) {
            if (q[static_cast<std::size_t>(a)] < q[static_cast<std::size_t>(j)] &&
                q[static_cast<std::size_t>(a)] > best_lo) {
                best_lo = q[static_cast<std::size_t>(a)];
                b.pred[static_cast<std::size_t>(j)] = a;
            }
            if (q[static_cast<std::size_t>(a)] > q[static_cast<std::size_t>(j)] &&
                q[static_cast<std::size_t>(a)] < best_hi) {
                best_hi = q[static_cast<std::size_t>(a)];
                b.succ[static_cast<std::size_t>(j)] = a;
            }
        }
    }
    return b;
}

// Occurrence search for a permutation pattern q over a cell set sorted by
// (col, row): strictly increasing columns, rows ordered like q. slot_fixed
// (if >= 0) is pre-assigned to cell `forced`.
bool dfs_cells(const std::vector<Cell>& cells, const std::vector<int>& q,
               const RowBounds& b, std::vector<Cell>& chosen, int slot,
               int slot_fixed, const Cell& forced, std::size_t from) {
    const int k = static_cast<int>(q.size());
    if (slot == k) return true;
    if (slot == slot_fixed) {
        // Column order with the neighbours is enforced when they are placed;
        // here only the row bounds need checking.
        const int pred = b.pred[static_cast<std::size_t>(slot)];
        const int succ = b.succ[static_cast<std::size_t>(slot)];
        if (pred >= 0 && !(chosen[static_cast<std::size_t>(pred)].row < forced.row))
            return false;
        if (succ >= 0 && !(forced.row < chosen[static_cast<std::size_t>(succ)].row))
            return false;
        if (slot > 0 && !(chosen[static_cast<std::size_t>(slot - 1)].col < forced.col))
            return false;
        chosen[static_cast<std::size_t>(slot)] = forced;
        return dfs_cells(cells, q, b, chosen, slot + 1, slot_fixed, forced, from);
    }
    const int pred = b.pred[static_cast<std::size_t>(slot)];
    const int succ = b.succ[static_cast<std::size_t>(slot)];
    const int min_col =
        slot > 0 ? chosen[static_cast<std::size_t>(slot - 1)].col : 0;
    for (std::size_t i = from; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        if (c.col <= min_col) continue;
        if (slot_fixed > slot && !(c.col < forced.col)) break; // cells sorted by col
        if (pred >= 0 && !(chosen[static_cast<std::size_t>(pred)].row < c.row)) continue;
        if (succ >= 0 && !(c.row < chosen[static_cast<std::size_t>(succ)].row)) continue;
        chosen[static_cast<std::size_t>(slot)] = c;
        if (dfs_cells(cells, q, b, chosen, slot + 1, slot_fixed, forced, i + 1))
            return true;
    }
    return false;
}

bool cells_contain(const std::vector<Cell>& cells, const std::vector<int>& q,
                   const RowBounds& b) {
    std::vector<Cell> chosen(q.size());
    return dfs_cells(cells, q, b, chosen, 0, -1, Cell{0, 0}, 0);
}

// Occurrence that must use `forced`. The caller guarantees the cell set
// without `forced` avoids q, so this is the only check needed after an
// insertion.
bool cells_contain_using(const std::vector<Cell>& cells, const std::vector<int>& q,
                         const RowBounds& b, const Cell& forced) {
    std::vector<Cell> chosen(q.size());
    for (int slot = 0; slot < static_cast<int>(q.size()); ++slot)
        if (dfs_cells(cells, q, b, chosen, 0, slot, forced, 0)) return true;
    return false;
}

std::vector<Cell> matrix_cells(const BinaryMatrix& m) {
    std::vector<Cell> cells;
    cells.reserve(m.ones());
    for (int c = 1; c <= m.cols(); ++c)
        for (int r : m.column(c)) cells.push_back(Cell{c, r});
    return cells;
}

// Extracts q with q[i] = row of the single 1 in column i+1, if P is a
// permutation matrix.
bool permutation_shape(const BinaryMatrix& P, std::vector<int>& q) {
    if (P.cols() != P.rows() || P.cols() == 0) return false;
    q.clear();
    std::vector<bool> seen(static_cast<std::size_t>(P.rows()), false);
    for (int c = 1; c <= P.cols(); ++c) {
        const auto& rows = P.column(c);
        if (rows.size() != 1) return false;
        if (seen[static_cast<std::size_t>(rows[0] - 1)]) return false;
        seen[static_cast<std::size_t>(rows[0] - 1)] = true;
        q.push_back(rows[0]);
    }
    return true;
}

} // namespace

namespace detail {

bool matrix_contains_subsets(const BinaryMatrix& M, const BinaryMatrix& P) {
    if (P.cols() > M.cols() || P.rows() > M.rows()) return false;
    const int pr = P.rows();
    // Current increasing choice of M rows for P rows 1..pr.
    std::vector<int> rows(static_cast<std::size_t>(pr));
    for (int i = 0; i < pr; ++i) rows[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
        // Greedy leftmost embedding of P's columns given the row choice.
        int c = 0;
        bool ok = true;
        for (int i = 1; i <= P.cols() && ok; ++i) {
            const auto& req = P.column(i);
            int found = -1;
            for (int cand = c + 1; cand <= M.cols(); ++cand) {
                bool covers = true;
                for (int r : req)
                    if (!M.at(cand, rows[static_cast<std::size_t>(r - 1)])) {
                        covers = false;
                        break;
                    }
                if (covers) {
                    found = cand;
                    break;
                }
            }
            if (found < 0)
                ok = false;
            else
                c = found;
        }
        if (ok) return true;
        // Next increasing row combination.
        int i = pr - 1;
        while (i >= 0 &&
               rows[static_cast<std::size_t>(i)] == M.rows() - (pr - 1 - i))
            --i;
        if (i < 0) return false;
        ++rows[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < pr; ++j)
            rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace detail

bool matrix_contains(const BinaryMatrix& M, const BinaryMatrix& P) {
    if (P.ones() == 0)
        throw std::invalid_argument("matrix_contains: P has no 1-entries");
    if (P.cols() > M.cols() || P.rows() > M.rows()) return false;
    std::vector<int> q;
    if (permutation_shape(P, q)) {
        RowBounds b = row_bounds(q);
        return cells_contain(matrix_cells(M), q, b);
    }
    return detail::matrix_contains_subsets(M, P);
}

int ex_brute(const Pattern& p, int n, int n_max) {
    if (p.size() < 2) throw std::invalid_argument("ex_brute: pattern length < 2");
    if (n < 1) throw std::invalid_argument("ex_brute: n < 1");
    if (n > n_max)
        throw resource_limit_error("ex_brute: n exceeds cap " + std::to_string(n_max));

    const std::vector<int> q(p.entries());
    const RowBounds b = row_bounds(q);
    const int total = n * n;
    std::vector<Cell> chosen;
    chosen.reserve(static_cast<std::size_t>(total));
    int best = 0;

    // Cells visited column-major from the bottom-left; the 1-branch is
    // explored first so a good incumbent appears early and the count bound
    // can cut.
    auto dfs = [&](auto&& self, int idx, int count) -> void {
        if (count + (total - idx) <= best) return;
        if (idx == total) {
            best = count;
            return;
        }
        const Cell cell{idx / n + 1, idx % n + 1};
        if (!cells_contain_using(chosen, q, b, cell)) {
            chosen.push_back(cell);
            self(self, idx + 1, count + 1);
            chosen.pop_back();
        }
        self(self, idx + 1, count);
    };
    dfs(dfs, 0, 0);
    return best;
}

BigInt count_avoiders(const Pattern& p, int n) {
    if (n < 1) throw std::invalid_argument("count_avoiders: n < 1");
    if (n > 10)
        throw resource_limit_error("count_avoiders: n exceeds cap 10");
    std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    std::uint64_t count = 0;
    do {
        if (!contains_pattern(perm, p)) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return BigInt(count);
}

BigInt count_T(const Pattern& p, int m, int n, int m_max, int n_max) {
    if (m < 0 || n < 0) throw std::invalid_argument("count_T: negative size");
    if (m > m_max)
        throw resource_limit_error("count_T: m exceeds cap " + std::to_string(m_max));
    if (n > n_max)
        throw resource_limit_error("count_T: n exceeds cap " + std::to_string(n_max));

    const std::vector<int> q(p.entries());
    const RowBounds b = row_bounds(q);
    const int total = m * m;
    if (n > total) return BigInt(0);
    std::vector<Cell> chosen;
    chosen.reserve(static_cast<std::size_t>(n));
    std::uint64_t count = 0;

    // Subsets that already contain p only grow into subsets containing p,
    // so the 1-branch is pruned as soon as an occurrence appears.
    auto dfs = [&](auto&& self, int idx, int left) -> void {
        if (left == 0) {
            ++count;
            return;
        }
        if (total - idx < left) return;
        const Cell cell{idx / m + 1, idx % m + 1};
        if (!cells_contain_using(chosen, q, b, cell)) {
            chosen.push_back(cell);
            self(self, idx + 1, left - 1);
            chosen.pop_back();
        }
        self(self, idx + 1, left);
    };
    dfs(dfs, 0, n);
    return BigInt(count);
}

} // namespace patsort
