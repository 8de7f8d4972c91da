#include "patsort/treesort.hpp"

#include <algorithm>

namespace patsort {

PermTable::PermTable(int k) : k_(k) {
    if (k < 1 || k > 8)
        throw std::invalid_argument("PermTable: k outside 1..8");
    count_ = factorial(k);
    flat_.reserve(count_ * static_cast<std::uint64_t>(k));
    std::vector<std::uint8_t> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
    do {
        flat_.insert(flat_.end(), perm.begin(), perm.end());
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::span<const std::uint8_t> PermTable::row(std::uint64_t rank) const {
    if (rank >= count_) throw std::out_of_range("PermTable::row: rank >= k!");
    return {flat_.data() + rank * static_cast<std::uint64_t>(k_),
            static_cast<std::size_t>(k_)};
}

Pattern PermTable::pattern(std::uint64_t rank) const {
    auto r = row(rank);
    return Pattern(std::vector<int>(r.begin(), r.end()));
}

namespace {

std::size_t leaf_index(const DecisionTree& t, std::span<const Key> s,
                       std::uint64_t& comparisons) {
    const std::uint32_t k = static_cast<std::uint32_t>(t.k);
    std::size_t node = 1;
    const std::size_t first_leaf = t.internal.size() + 1; // 2^h
    KeyLess less(comparisons);
    while (node < first_leaf) {
        const std::uint32_t code = t.internal[node - 1];
        const Key& si = s[code / k];
        const Key& sj = s[code % k];
        // left iff s_i <= s_j
        node = 2 * node + (less(sj, si) ? 1 : 0);
    }
    return node - first_leaf;
}

} // namespace

Pattern run_tree(const DecisionTree& t, std::span<const Key> s) {
    if (s.size() != static_cast<std::size_t>(t.k))
        throw std::invalid_argument("run_tree: sequence length != k");
    std::uint64_t scratch = 0;
    return perm_unrank(t.leaves[leaf_index(t, s, scratch)], t.k);
}

std::span<const std::uint8_t> run_tree(const DecisionTree& t, std::span<const Key> s,
                                       const PermTable& table,
                                       std::uint64_t& comparisons) {
    return table.row(t.leaves[leaf_index(t, s, comparisons)]);
}

bool check_sorts(std::span<const Key> s, std::span<const std::uint8_t> sigma,
                 std::uint64_t& comparisons) {
    if (sigma.size() != s.size())
        throw std::invalid_argument("check_sorts: length mismatch");
    KeyLess less(comparisons);
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
        const Key& a = s[sigma[i] - 1];
        const Key& b = s[sigma[i + 1] - 1];
        if (less(b, a)) return false;
    }
    return true;
}

bool check_sorts(std::span<const Key> s, const Pattern& sigma) {
    std::vector<std::uint8_t> buf(sigma.entries().begin(), sigma.entries().end());
    std::uint64_t scratch = 0;
    return check_sorts(s, buf, scratch);
}

TreeEnumerator::TreeEnumerator(int k) : TreeEnumerator(k, k) {}

TreeEnumerator::TreeEnumerator(int k, int start_height) {
    if (k < 1 || k > 8)
        throw std::invalid_argument("TreeEnumerator: k outside 1..8");
    if (start_height < 1)
        throw std::invalid_argument("TreeEnumerator: height < 1");
    tree_.k = k;
    code_base_ = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    rank_base_ = factorial(k);
    reset_height(start_height);
}

void TreeEnumerator::reset_height(int h) {
    tree_.height = h;
    const std::size_t leaves = std::size_t{1} << h;
    tree_.internal.assign(leaves - 1, 0);
    tree_.leaves.assign(leaves, 0);
}

void TreeEnumerator::advance() {
    for (std::size_t i = tree_.leaves.size(); i-- > 0;) {
        if (++tree_.leaves[i] < rank_base_) return;
        tree_.leaves[i] = 0;
    }
    for (std::size_t i = tree_.internal.size(); i-- > 0;) {
        if (++tree_.internal[i] < code_base_) return;
        tree_.internal[i] = 0;
    }
    // Every array rolled over: the height is exhausted.
    reset_height(tree_.height + 1);
}

const DecisionTree& next_tree(TreeEnumerator& e) {
    e.advance();
    return e.current();
}

BigInt count_trees_exact(int k, int h) {
    if (k < 1) throw std::invalid_argument("count_trees_exact: k < 1");
    if (h < 1) throw std::invalid_argument("count_trees_exact: h < 1");
    if (h > 20)
        throw resource_limit_error("count_trees_exact: h exceeds cap 20");
    const std::uint64_t leaves = std::uint64_t{1} << h;
    BigInt kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= i;
    const BigInt codes = bigint_pow(BigInt(k) * k, static_cast<unsigned>(leaves - 1));
    const BigInt ranks = bigint_pow(kfact, static_cast<unsigned>(leaves));
    return codes * ranks;
}

std::pair<std::vector<KeySequence>, TreeSortStats>
sort_blocks(std::vector<KeySequence> blocks, std::optional<std::uint64_t> budget) {
    TreeSortStats stats;
    stats.blocks = blocks.size();
    if (blocks.empty()) return {std::move(blocks), std::move(stats)};

    const std::size_t k = blocks.front().size();
    if (k < 1) throw std::invalid_argument("sort_blocks: empty block");
    for (const KeySequence& b : blocks)
        if (b.size() != k)
            throw std::invalid_argument("sort_blocks: unequal block lengths");

    PermTable table(static_cast<int>(k));
    TreeEnumerator enumerator(static_cast<int>(k));
    std::vector<Key> scratch(k);
    bool exhausted = false;

    for (KeySequence& block : blocks) {
        bool sorted = false;
        while (!exhausted && !sorted) {
            std::uint64_t attempt_cmp = 0;
            auto sigma = run_tree(enumerator.current(), block, table, attempt_cmp);
            if (check_sorts(block, sigma, attempt_cmp)) {
                for (std::size_t i = 0; i < k; ++i) scratch[i] = block[sigma[i] - 1];
                std::copy(scratch.begin(), scratch.end(), block.begin());
                stats.comparisons += attempt_cmp;
                ++stats.successful_runs;
                sorted = true;
            } else {
                stats.search_comparisons += attempt_cmp;
                if (budget && stats.tree_advances >= *budget) {
                    exhausted = true;
                } else {
                    enumerator.advance();
                    ++stats.tree_advances;
                }
            }
        }
        if (!sorted) {
            binary_insertion_sort(block, stats.comparisons);
            ++stats.fallback_blocks;
        }
    }
    stats.final_height = enumerator.current().height;
    return {std::move(blocks), std::move(stats)};
}

} // namespace patsort
