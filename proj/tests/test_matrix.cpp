#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "patsort/generators.hpp"
#include "patsort/matrix_oracle.hpp"

#include <vector>

using namespace patsort;

namespace {

BinaryMatrix random_matrix(int cols, int rows, int percent_ones, SplitMix64& rng) {
    BinaryMatrix m(cols, rows);
    for (int c = 1; c <= cols; ++c)
        for (int r = 1; r <= rows; ++r)
            if (rng.bounded(100) < static_cast<std::uint64_t>(percent_ones)) m.set(c, r);
    return m;
}

BinaryMatrix flip_cols(const BinaryMatrix& m) {
    BinaryMatrix out(m.cols(), m.rows());
    for (int c = 1; c <= m.cols(); ++c)
        for (const int r : m.column(c)) out.set(m.cols() - c + 1, r);
    return out;
}

BinaryMatrix flip_rows(const BinaryMatrix& m) {
    BinaryMatrix out(m.cols(), m.rows());
    for (int c = 1; c <= m.cols(); ++c)
        for (const int r : m.column(c)) out.set(c, m.rows() - r + 1);
    return out;
}

} // namespace

TEST_CASE("matrix basics") {
    BinaryMatrix m(3, 2);
    CHECK(m.cols() == 3);
    CHECK(m.rows() == 2);
    CHECK(m.ones() == 0);
    m.set(2, 1);
    m.set(2, 1);
    m.set(2, 2);
    CHECK(m.ones() == 2);
    CHECK(m.at(2, 1));
    CHECK(!m.at(1, 1));
    CHECK(m.column(2) == std::vector<int>{1, 2});
    CHECK_THROWS_AS(BinaryMatrix(-1, 2), std::invalid_argument);
}

TEST_CASE("permutation matrices put a 1 at (i, p_i)") {
    const auto m = BinaryMatrix::from_pattern(Pattern::parse("2,1,3"));
    CHECK(m.cols() == 3);
    CHECK(m.rows() == 3);
    CHECK(m.ones() == 3);
    CHECK(m.at(1, 2));
    CHECK(m.at(2, 1));
    CHECK(m.at(3, 3));
}

TEST_CASE("containment on permutation matrices mirrors sequence containment") {
    const auto M = BinaryMatrix::from_pattern(Pattern::parse("3,1,5,2,4"));
    CHECK(matrix_contains(M, BinaryMatrix::from_pattern(Pattern::parse("2,1,3"))));
    CHECK(matrix_contains(M, BinaryMatrix::from_pattern(Pattern::parse("1,2"))));
    CHECK(!matrix_contains(BinaryMatrix::from_pattern(Pattern::parse("3,2,1")),
                           BinaryMatrix::from_pattern(Pattern::parse("1,2"))));
    CHECK(matrix_contains(M, M));
}

TEST_CASE("containment rejects an all-zero pattern and handles single ones") {
    const auto M = BinaryMatrix::from_pattern(Pattern::parse("2,1"));
    CHECK_THROWS_AS(matrix_contains(M, BinaryMatrix(2, 2)), std::invalid_argument);
    BinaryMatrix dot(1, 1);
    dot.set(1, 1);
    CHECK(matrix_contains(M, dot));
    CHECK(!matrix_contains(BinaryMatrix(3, 3), dot));
}

TEST_CASE("fast path agrees with the subset reference") {
    SplitMix64 rng(11);
    const std::vector<Pattern> pats{Pattern::parse("1,2"), Pattern::parse("2,1"),
                                    Pattern::parse("2,3,1"), Pattern::parse("1,3,2"),
                                    Pattern::parse("3,2,1")};
    for (int iter = 0; iter < 200; ++iter) {
        const int cols = 1 + static_cast<int>(rng.bounded(5));
        const int rows = 1 + static_cast<int>(rng.bounded(5));
        const auto M = random_matrix(cols, rows, 20 + static_cast<int>(rng.bounded(60)), rng);
        const auto P = BinaryMatrix::from_pattern(pats[rng.bounded(pats.size())]);
        CHECK(matrix_contains(M, P) == detail::matrix_contains_subsets(M, P));
    }
}

TEST_CASE("containment is invariant under simultaneous flips") {
    SplitMix64 rng(12);
    const auto p231 = BinaryMatrix::from_pattern(Pattern::parse("2,3,1"));
    for (int iter = 0; iter < 100; ++iter) {
        const auto M = random_matrix(5, 5, 30, rng);
        const bool base = matrix_contains(M, p231);
        CHECK(matrix_contains(flip_cols(M), flip_cols(p231)) == base);
        CHECK(matrix_contains(flip_rows(M), flip_rows(p231)) == base);
    }
}

TEST_CASE("extremal ones count for the ascent pattern is 2n-1") {
    for (int n = 1; n <= 5; ++n) {
        CHECK(ex_brute(Pattern::parse("1,2"), n) == 2 * n - 1);
        CHECK(ex_brute(Pattern::parse("2,1"), n) == 2 * n - 1);
    }
    CHECK_THROWS_AS(ex_brute(Pattern::parse("1,2"), 6), resource_limit_error);
    CHECK_THROWS_AS(ex_brute(Pattern::parse("1"), 3), std::invalid_argument);
    CHECK_THROWS_AS(ex_brute(Pattern::parse("1,2"), 0), std::invalid_argument);
}

TEST_CASE("extremal counts grow with n") {
    const Pattern p = Pattern::parse("2,1,3");
    int prev = 0;
    for (int n = 1; n <= 4; ++n) {
        const int e = ex_brute(p, n);
        CHECK(e >= prev);
        CHECK(e <= n * n);
        prev = e;
    }
}

TEST_CASE("avoider counts match the Catalan prefix") {
    const Pattern p = Pattern::parse("2,3,1");
    CHECK(count_avoiders(p, 1) == 1);
    CHECK(count_avoiders(p, 2) == 2);
    CHECK(count_avoiders(p, 3) == 5);
    CHECK(count_avoiders(p, 4) == 14);
    CHECK(count_avoiders(p, 5) == 42);
    // all length-3 patterns are equinumerous
    CHECK(count_avoiders(Pattern::parse("1,2,3"), 5) == 42);
    CHECK(count_avoiders(Pattern::parse("1,2"), 7) == 1);
    CHECK_THROWS_AS(count_avoiders(p, 11), resource_limit_error);
}

TEST_CASE("matrix counts by exact number of ones") {
    const Pattern p12 = Pattern::parse("1,2");
    CHECK(count_T(p12, 2, 2) == 5);
    CHECK(count_T(Pattern::parse("2,1"), 2, 2) == 5);
    CHECK(count_T(p12, 2, 0) == 1);
    CHECK(count_T(p12, 2, 1) == 4);
    CHECK(count_T(p12, 2, 4) == 0);
    CHECK(count_T(p12, 2, 5) == 0); // more ones than cells
    CHECK_THROWS_AS(count_T(p12, 5, 2), resource_limit_error);
    CHECK_THROWS_AS(count_T(p12, 2, 7), resource_limit_error);
}

TEST_CASE("matrix counts agree with a direct filter over small grids") {
    // Of the 16 2x2 matrices, exactly the 4 supersets of the diagonal pair
    // {(1,1),(2,2)} contain the ascent, so 12 avoid it.
    const Pattern p12 = Pattern::parse("1,2");
    BigInt total = 0;
    for (int n = 0; n <= 4; ++n) total += count_T(p12, 2, n);
    CHECK(total == 12);
    CHECK(count_T(p12, 2, 3) == 2);
}
