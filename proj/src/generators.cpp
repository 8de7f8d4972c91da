#include "patsort/generators.hpp"

#include <algorithm>
#include <numeric>

namespace patsort {

namespace {

void shuffle(std::vector<int>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.bounded(i)]);
}

// Uniform balanced push/pop word of length 2n via the cycle lemma: shuffle
// n pushes and n+1 pops; exactly one rotation point (right after the first
// prefix-sum minimum) yields a balanced word followed by one extra pop.
std::vector<int> random_balanced_word(int n, SplitMix64& rng) {
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(2 * n + 1));
    w.insert(w.end(), static_cast<std::size_t>(n), +1);
    w.insert(w.end(), static_cast<std::size_t>(n) + 1, -1);
    shuffle(w, rng);

    int sum = 0, min_sum = 1, min_pos = -1;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        sum += w[static_cast<std::size_t>(i)];
        if (sum < min_sum) {
            min_sum = sum;
            min_pos = i;
        }
    }
    std::rotate(w.begin(), w.begin() + (min_pos + 1), w.end());
    w.pop_back(); // the trailing pop that made the counts unequal
    return w;
}

Pattern apply_complement(const Pattern& p) {
    const int n = p.size();
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n + 1 - p[i];
    return Pattern(std::move(out));
}

Pattern apply_reverse(const Pattern& p) {
    std::vector<int> out(p.entries().rbegin(), p.entries().rend());
    return Pattern(std::move(out));
}

} // namespace

StackTarget stack_target_from_int(int value) {
    switch (value) {
        case 231: return StackTarget::p231;
        case 312: return StackTarget::p312;
        case 132: return StackTarget::p132;
        case 213: return StackTarget::p213;
        default:
            throw std::invalid_argument(
                "stack target must be one of 231, 312, 132, 213");
    }
}

Pattern stack_target_pattern(StackTarget target) {
    switch (target) {
        case StackTarget::p231: return Pattern({2, 3, 1});
        case StackTarget::p312: return Pattern({3, 1, 2});
        case StackTarget::p132: return Pattern({1, 3, 2});
        case StackTarget::p213: return Pattern({2, 1, 3});
    }
    throw std::invalid_argument("bad stack target");
}

Pattern gen_stack_family(int n, StackTarget target, Seed seed) {
    if (n < 1) throw std::invalid_argument("gen_stack_family: n < 1");
    SplitMix64 rng(seed);
    const std::vector<int> word = random_balanced_word(n, rng);

    // Push 1..n in order, pop on -1. The output avoids 3,1,2: once a value
    // is buried in the stack, everything above it leaves first.
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    std::vector<int> stack;
    int next_value = 1;
    for (int step : word) {
        if (step > 0) {
            stack.push_back(next_value++);
        } else {
            out.push_back(stack.back());
            stack.pop_back();
        }
    }
    Pattern raw(std::move(out));

    // Symmetries carry Av(312) onto the other three targets:
    //   inverse    : sigma avoids p iff sigma^-1 avoids p^-1, 312^-1 = 231
    //   complement : values flipped, 312 -> 132
    //   reverse    : positions flipped, 312 -> 213
    switch (target) {
        case StackTarget::p312: return raw;
        case StackTarget::p231: return inverse(raw);
        case StackTarget::p132: return apply_complement(raw);
        case StackTarget::p213: return apply_reverse(raw);
    }
    throw std::invalid_argument("bad stack target");
}

Pattern gen_layered_runs(int n, int t, Seed seed) {
    if (n < 1) throw std::invalid_argument("gen_layered_runs: n < 1");
    if (t < 1) throw std::invalid_argument("gen_layered_runs: t < 1");
    SplitMix64 rng(seed);

    // Split 1..n into t consecutive value blocks of near-equal size, then
    // shuffle the multiset of block labels; each block hands out its values
    // in increasing order at its label's positions.
    const int blocks = std::min(t, n);
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(n));
    const int base = n / blocks, extra = n % blocks;
    for (int b = 0; b < blocks; ++b) {
        const int size = base + (b < extra ? 1 : 0);
        labels.insert(labels.end(), static_cast<std::size_t>(size), b);
    }
    shuffle(labels, rng);

    std::vector<int> next_value(static_cast<std::size_t>(blocks));
    int start = 1;
    for (int b = 0; b < blocks; ++b) {
        next_value[static_cast<std::size_t>(b)] = start;
        start += base + (b < extra ? 1 : 0);
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int label : labels)
        out.push_back(next_value[static_cast<std::size_t>(label)]++);
    return Pattern(std::move(out));
}

Pattern gen_rejection(const Pattern& p, int n, Seed seed) {
    if (n < 1) throw std::invalid_argument("gen_rejection: n < 1");
    if (n > 10) throw resource_limit_error("gen_rejection: n exceeds cap 10");
    SplitMix64 rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(n));
    constexpr int kMaxAttempts = 1000000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::iota(perm.begin(), perm.end(), 1);
        shuffle(perm, rng);
        const std::vector<std::int64_t> vals(perm.begin(), perm.end());
        if (!contains_pattern(vals, p)) return Pattern(perm);
    }
    throw resource_limit_error("gen_rejection: no avoider found in 1e6 attempts");
}

std::vector<Run> partition_into_runs(std::span<const std::int64_t> values,
                                     std::size_t block) {
    if (block < 1) throw std::invalid_argument("partition_into_runs: block < 1");
    std::vector<Run> runs;
    runs.reserve((values.size() + block - 1) / block);
    for (std::size_t start = 0; start < values.size(); start += block) {
        const std::size_t end = std::min(values.size(), start + block);
        KeySequence keys;
        keys.reserve(end - start);
        for (std::size_t i = start; i < end; ++i)
            keys.push_back(Key{values[i], i});
        std::sort(keys.begin(), keys.end(),
                  [](const Key& a, const Key& b) { return a < b; });
        runs.emplace_back(std::move(keys));
    }
    return runs;
}

std::vector<std::int64_t> inject_duplicates(const Pattern& perm, int alphabet,
                                            Seed seed) {
    if (alphabet < 1) throw std::invalid_argument("inject_duplicates: alphabet < 1");
    const int n = perm.size();
    SplitMix64 rng(seed);
    // n sorted draws from 1..alphabet form a random monotone map of the
    // value ranks; with alphabet < n it is non-injective by pigeonhole.
    std::vector<std::int64_t> image(static_cast<std::size_t>(n));
    for (auto& v : image)
        v = static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(alphabet))) + 1;
    std::sort(image.begin(), image.end());
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(image[static_cast<std::size_t>(perm[i] - 1)]);
    return out;
}

} // namespace patsort
