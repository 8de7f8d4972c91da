#pragma once

#include "patsort/merge.hpp"
#include "patsort/treesort.hpp"

#include <array>

namespace patsort {

// Budget handed to the block-sorting tree search when the config leaves it
// unset. The unbounded search is available through sort_blocks directly;
// the composed sorter always bounds it so arbitrary inputs cannot stall.
inline constexpr std::uint64_t kDefaultTreeBudget = 10'000'000;

struct SorterConfig {
    std::optional<int> k_override;            // block length; derived from n when absent
    int k_max = 3;                            // cap for the derived block length
    std::optional<std::uint64_t> tree_budget; // absent -> kDefaultTreeBudget
    std::size_t small_n_cutoff = 64;          // inputs this short sort directly
};

struct LayerStats {
    std::size_t groups = 0;
    std::size_t runs_before = 0;
    std::size_t runs_after = 0;
    std::uint64_t comparisons = 0;
    std::vector<MergeStats> merges; // one per group, in group order
};

struct SortReport {
    std::size_t n = 0;
    int k = 0;            // 0 on the direct small-input path
    bool small_path = false;
    std::size_t t1 = 0, t2 = 0;
    TreeSortStats block_stats;
    std::uint64_t tail_comparisons = 0;   // short final block
    std::uint64_t direct_comparisons = 0; // small-input path
    std::array<LayerStats, 3> layers;
    // Sum of the stage counters above (tree-search overhead excluded and
    // reported separately as search_comparisons).
    std::uint64_t comparisons = 0;
    std::uint64_t search_comparisons = 0;

    std::size_t total_phases() const;
    std::size_t total_rounds() const;
};

// floor-free t-fold base-2 logarithm: real-valued iteration, ceiling at the
// end, everything clamped at >= 1. t = 0 returns n.
std::uint64_t iterated_log(std::uint64_t n, int t);

// Stable adaptive sort: cuts the input into length-k blocks sorted by an
// advancing decision tree, then merges in three layers of arity-learning
// multi-way merges. Returns keys (value, original position) in ascending
// key order.
std::pair<KeySequence, SortReport>
sort_keys_pattern_avoiding(std::span<const std::int64_t> values,
                           const SorterConfig& cfg = {});

// Same, returning just the values.
std::pair<std::vector<std::int64_t>, SortReport>
sort_pattern_avoiding(std::span<const std::int64_t> values,
                      const SorterConfig& cfg = {});

} // namespace patsort
