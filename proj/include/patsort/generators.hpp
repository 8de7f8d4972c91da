#pragma once

#include "patsort/core.hpp"
#include "patsort/merge.hpp"

namespace patsort {

using Seed = std::uint64_t;

// SplitMix64. Bit-exact on every platform; distinct seeds give independent
// streams, which is how the generators split their randomness.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(Seed seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, m), m >= 1, by modulo rejection.
    std::uint64_t bounded(std::uint64_t m) {
        const std::uint64_t threshold = (0 - m) % m;
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % m;
        }
    }
};

// Pattern the stack-word family is asked to avoid. The raw push/pop output
// avoids 3,1,2; the other targets are reached through the symmetry noted
// next to each mapping in the implementation.
enum class StackTarget { p231, p312, p132, p213 };

StackTarget stack_target_from_int(int value); // 231, 312, 132, 213
Pattern stack_target_pattern(StackTarget target);

// Permutation of length n produced by a uniformly random balanced push/pop
// word; guaranteed to avoid the target pattern.
Pattern gen_stack_family(int n, StackTarget target, Seed seed);

// Random interleaving of t increasing blocks of values; avoids the
// decreasing pattern of length t+1.
Pattern gen_layered_runs(int n, int t, Seed seed);

// Rejection sampling of p-avoiding permutations, n <= 10, capped at 1e6
// attempts.
Pattern gen_rejection(const Pattern& p, int n, Seed seed);

// Cuts the input into consecutive blocks of the given size (last one may be
// shorter) and sorts each block; ties keep input order.
std::vector<Run> partition_into_runs(std::span<const std::int64_t> values,
                                     std::size_t block);

// Maps the permutation's values through a random monotone non-decreasing
// map onto 1..alphabet. Non-injective whenever alphabet < n, which is the
// point: it manufactures duplicates without creating new patterns.
std::vector<std::int64_t> inject_duplicates(const Pattern& perm, int alphabet,
                                            Seed seed);

} // namespace patsort
