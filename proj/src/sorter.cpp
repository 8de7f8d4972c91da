#include "patsort/sorter.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace patsort {

namespace {

struct LogTriple {
    double l1, l2, l3; // log n, log log n, log log log n, each clamped >= 1
};

LogTriple log_triple(std::size_t n) {
    double l1 = std::max(1.0, std::log2(static_cast<double>(n)));
    double l2 = std::max(1.0, std::log2(l1));
    double l3 = std::max(1.0, std::log2(l2));
    return {l1, l2, l3};
}

// Merge consecutive groups of up to `group_size` runs, each group with its
// own arity-learning merge. Returns one run per group.
std::vector<Run> merge_layer(std::vector<Run> runs, std::size_t group_size,
                             LayerStats& stats) {
    assert(group_size >= 1);
    stats.runs_before = runs.size();
    std::vector<Run> out;
    out.reserve(runs.size() / group_size + 1);
    std::size_t i = 0;
    while (i < runs.size()) {
        const std::size_t j = std::min(runs.size(), i + group_size);
        std::vector<Run> group;
        group.reserve(j - i);
        for (std::size_t g = i; g < j; ++g) group.push_back(std::move(runs[g]));
        auto [merged, mstats] = merge_agnostic(std::move(group));
        stats.comparisons += mstats.comparisons;
        stats.merges.push_back(std::move(mstats));
        out.emplace_back(std::move(merged));
        i = j;
    }
    stats.groups = stats.merges.size();
    stats.runs_after = out.size();
    return out;
}

} // namespace

std::size_t SortReport::total_phases() const {
    std::size_t total = 0;
    for (const auto& layer : layers)
        for (const auto& m : layer.merges) total += m.phases.size();
    return total;
}

std::size_t SortReport::total_rounds() const {
    std::size_t total = 0;
    for (const auto& layer : layers)
        for (const auto& m : layer.merges)
            for (const auto& p : m.phases) total += p.rounds.size();
    return total;
}

std::uint64_t iterated_log(std::uint64_t n, int t) {
    if (n < 1) throw std::invalid_argument("iterated_log: n must be >= 1");
    if (t < 0) throw std::invalid_argument("iterated_log: t must be >= 0");
    if (t == 0) return n;
    double x = static_cast<double>(n);
    for (int i = 0; i < t; ++i) x = std::log2(std::max(x, 1.0));
    return static_cast<std::uint64_t>(std::ceil(std::max(x, 1.0)));
}

std::pair<KeySequence, SortReport>
sort_keys_pattern_avoiding(std::span<const std::int64_t> values,
                           const SorterConfig& cfg) {
    SortReport rep;
    rep.n = values.size();
    KeySequence keys = make_keys(values);

    if (keys.size() <= cfg.small_n_cutoff) {
        rep.small_path = true;
        binary_insertion_sort(keys, rep.direct_comparisons);
        rep.comparisons = rep.direct_comparisons;
        return {std::move(keys), rep};
    }

    const LogTriple lt = log_triple(keys.size());
    int k;
    if (cfg.k_override) {
        k = *cfg.k_override;
        if (k < 1) throw std::invalid_argument("sorter: block length must be >= 1");
    } else {
        k = static_cast<int>(std::ceil(lt.l3));
        k = std::min(k, cfg.k_max);
        k = std::max(k, 1);
    }
    rep.k = k;
    const auto t1 =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(lt.l2 / lt.l3)));
    const auto t2 =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(lt.l1 / lt.l2)));
    rep.t1 = t1;
    rep.t2 = t2;

    const std::size_t kk = static_cast<std::size_t>(k);
    const std::size_t full = keys.size() / kk;
    std::vector<KeySequence> blocks;
    blocks.reserve(full);
    for (std::size_t b = 0; b < full; ++b)
        blocks.emplace_back(keys.begin() + static_cast<std::ptrdiff_t>(b * kk),
                            keys.begin() + static_cast<std::ptrdiff_t>((b + 1) * kk));
    KeySequence tail(keys.begin() + static_cast<std::ptrdiff_t>(full * kk), keys.end());

    const std::uint64_t budget = cfg.tree_budget.value_or(kDefaultTreeBudget);
    auto [sorted_blocks, bstats] = sort_blocks(std::move(blocks), budget);
    rep.block_stats = bstats;
    rep.search_comparisons = bstats.search_comparisons;

    if (!tail.empty()) binary_insertion_sort(tail, rep.tail_comparisons);

    std::vector<Run> runs;
    runs.reserve(sorted_blocks.size() + 1);
    for (auto& b : sorted_blocks) runs.emplace_back(std::move(b));
    if (!tail.empty()) runs.emplace_back(std::move(tail));

    runs = merge_layer(std::move(runs), t1, rep.layers[0]);
    runs = merge_layer(std::move(runs), t2, rep.layers[1]);

    rep.layers[2].runs_before = runs.size();
    auto [out, mstats] = merge_agnostic(std::move(runs));
    rep.layers[2].groups = 1;
    rep.layers[2].runs_after = 1;
    rep.layers[2].comparisons = mstats.comparisons;
    rep.layers[2].merges.push_back(std::move(mstats));

    rep.comparisons = rep.direct_comparisons + rep.block_stats.comparisons +
                      rep.tail_comparisons + rep.layers[0].comparisons +
                      rep.layers[1].comparisons + rep.layers[2].comparisons;
    return {std::move(out), rep};
}

std::pair<std::vector<std::int64_t>, SortReport>
sort_pattern_avoiding(std::span<const std::int64_t> values,
                      const SorterConfig& cfg) {
    auto [keys, rep] = sort_keys_pattern_avoiding(values, cfg);
    return {key_values(keys), std::move(rep)};
}

} // namespace patsort
