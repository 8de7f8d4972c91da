#pragma once

#include "patsort/bigint.hpp"
#include "patsort/core.hpp"

#include <optional>

namespace patsort {

// Perfect binary comparison tree over sequences of fixed length k, stored
// in heap layout: internal nodes 1..2^h-1 (children of i at 2i, 2i+1), then
// 2^h leaves. An internal code c encodes the index pair (c/k+1, c%k+1);
// evaluation walks left when s_i <= s_j. Each leaf holds the lexicographic
// rank of a permutation of 1..k.
struct DecisionTree {
    int k = 0;
    int height = 0;
    std::vector<std::uint32_t> internal; // 2^h - 1 codes in [0, k^2)
    std::vector<std::uint64_t> leaves;   // 2^h ranks in [0, k!)
};

// All k! permutations of 1..k in lexicographic order, flattened. k <= 8.
class PermTable {
public:
    explicit PermTable(int k);
    int k() const { return k_; }
    std::uint64_t size() const { return count_; }
    // k entries with values 1..k.
    std::span<const std::uint8_t> row(std::uint64_t rank) const;
    Pattern pattern(std::uint64_t rank) const;

private:
    int k_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint8_t> flat_;
};

// Walks s through the tree and returns the permutation at the reached leaf.
Pattern run_tree(const DecisionTree& t, std::span<const Key> s);
// Hot-path variant; returns the leaf's row in `table`.
std::span<const std::uint8_t> run_tree(const DecisionTree& t, std::span<const Key> s,
                                       const PermTable& table,
                                       std::uint64_t& comparisons);

// True iff s[sigma_1-1] <= s[sigma_2-1] <= ... in key order.
bool check_sorts(std::span<const Key> s, const Pattern& sigma);
bool check_sorts(std::span<const Key> s, std::span<const std::uint8_t> sigma,
                 std::uint64_t& comparisons);

// Lexicographic enumeration of all trees of a height, internal codes more
// significant than leaf ranks, least-significant digit last; when a height
// is exhausted the enumerator restarts with all-zero arrays at height+1.
class TreeEnumerator {
public:
    explicit TreeEnumerator(int k);      // starts at height k
    TreeEnumerator(int k, int start_height);
    const DecisionTree& current() const { return tree_; }
    std::uint64_t code_base() const { return code_base_; }
    std::uint64_t rank_base() const { return rank_base_; }
    void advance();

private:
    void reset_height(int h);

    DecisionTree tree_;
    std::uint64_t code_base_ = 0; // k^2
    std::uint64_t rank_base_ = 0; // k!
};

// Advances and returns the enumerator's new current tree.
const DecisionTree& next_tree(TreeEnumerator& e);

// Number of representable trees of height exactly h:
// (k^2)^(2^h - 1) * (k!)^(2^h).
BigInt count_trees_exact(int k, int h);

struct TreeSortStats {
    std::size_t blocks = 0;
    std::size_t successful_runs = 0;  // blocks sorted by the candidate tree
    std::uint64_t tree_advances = 0;
    std::size_t fallback_blocks = 0;
    int final_height = 0;
    // Key comparisons that produced sorted output: successful tree runs,
    // their verifications, and fallback sorting.
    std::uint64_t comparisons = 0;
    // Key comparisons burned by failed candidate runs and verifications.
    std::uint64_t search_comparisons = 0;
};

// Sorts each fixed-length block with a single advancing candidate tree:
// run the candidate, verify, advance the enumerator on failure and retry
// the same block. The candidate is never reset between blocks. Once
// `budget` tree advances are spent, the current and all remaining blocks
// are sorted by binary insertion instead. An absent budget means unbounded
// search.
std::pair<std::vector<KeySequence>, TreeSortStats>
sort_blocks(std::vector<KeySequence> blocks, std::optional<std::uint64_t> budget);

} // namespace patsort
