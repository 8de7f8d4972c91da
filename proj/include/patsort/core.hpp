#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace patsort {

// Sorting key: the input value paired with its original position. Comparison
// is lexicographic (value, then tie), so any two keys taken from one input
// sequence compare strictly even when values repeat. Ties are what make the
// whole pipeline stable.
struct Key {
    std::int64_t value = 0;
    std::uint64_t tie = 0;

    friend constexpr bool operator==(const Key&, const Key&) = default;
    friend constexpr bool operator<(const Key& a, const Key& b) {
        return a.value < b.value || (a.value == b.value && a.tie < b.tie);
    }
    friend constexpr bool operator<=(const Key& a, const Key& b) { return !(b < a); }
};

using KeySequence = std::vector<Key>;

// Builds keys with tie = position (0-based) in `values`.
KeySequence make_keys(std::span<const std::int64_t> values);
std::vector<std::int64_t> key_values(const KeySequence& keys);

// Less-than on keys that increments *counter once per call. All comparison
// counts reported by the library come from instrumented call sites using
// this functor.
struct KeyLess {
    std::uint64_t* counter;

    explicit KeyLess(std::uint64_t& c) : counter(&c) {}
    bool operator()(const Key& a, const Key& b) const {
        ++*counter;
        return a.value < b.value || (a.value == b.value && a.tie < b.tie);
    }
};

// Thrown when a configured work cap (enumeration size, retry budget, ...)
// would be exceeded. Maps to exit code 3 in the CLI.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what)
        : std::runtime_error(what) {}
};

// A permutation of 1..k, k >= 1. Also used for permutation-shaped test
// instances (k up to a few hundred thousand), not only short patterns.
class Pattern {
public:
    explicit Pattern(std::vector<int> entries);
    static Pattern identity(int k);
    // Parses comma-separated 1-based entries, e.g. "2,3,1".
    static Pattern parse(const std::string& text);

    int size() const { return static_cast<int>(entries_.size()); }
    // 0-based position, 1-based value.
    int operator[](int pos) const { return entries_[static_cast<std::size_t>(pos)]; }
    const std::vector<int>& entries() const { return entries_; }
    std::vector<std::int64_t> values() const;
    std::string to_string() const;

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    std::vector<int> entries_;
};

// True iff a and b have equal length and the same relative order at every
// index pair, including equalities.
bool is_order_isomorphic(std::span<const std::int64_t> a,
                         std::span<const std::int64_t> b);

// True iff some subsequence of s is order-isomorphic to p. Pruned
// depth-first search; exact but exponential in |p|, intended as a test
// oracle, not a production matcher.
bool contains_pattern(std::span<const std::int64_t> s, const Pattern& p);

// tau with tau[sigma_i - 1] = i, 1-based values.
Pattern inverse(const Pattern& sigma);

// Lexicographic rank of p among all permutations of its length (0-based),
// and its inverse. k <= 20 so ranks fit in 64 bits.
std::uint64_t perm_rank(const Pattern& p);
Pattern perm_unrank(std::uint64_t rank, int k);

std::uint64_t factorial(int k); // k <= 20

// In-place binary insertion sort on keys; O(n log n) comparisons, all
// counted. Used for short blocks and as the enumeration fallback.
void binary_insertion_sort(std::span<Key> keys, std::uint64_t& comparisons);

} // namespace patsort
