#include "patsort/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>

namespace patsort {

KeySequence make_keys(std::span<const std::int64_t> values) {
    KeySequence keys;
    keys.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        keys.push_back(Key{values[i], i});
    return keys;
}

std::vector<std::int64_t> key_values(const KeySequence& keys) {
    std::vector<std::int64_t> out;
    out.reserve(keys.size());
    for (const Key& k : keys) out.push_back(k.value);
    return out;
}

Pattern::Pattern(std::vector<int> entries) : entries_(std::move(entries)) {
    const int k = static_cast<int>(entries_.size());
    if (k < 1) throw std::invalid_argument("pattern must have length >= 1");
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int v : entries_) {
        if (v < 1 || v > k)
            throw std::invalid_argument("pattern entry out of range 1..k");
        if (seen[static_cast<std::size_t>(v - 1)])
            throw std::invalid_argument("pattern entry repeated");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Pattern Pattern::identity(int k) {
    std::vector<int> e(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = i + 1;
    return Pattern(std::move(e));
}

Pattern Pattern::parse(const std::string& text) {
    std::vector<int> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::size_t b = pos, e = comma;
        while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
        while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + b, text.data() + e, value);
        if (ec != std::errc() || ptr != text.data() + e)
            throw std::invalid_argument("pattern: bad entry '" +
                                        text.substr(pos, comma - pos) + "'");
        entries.push_back(value);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return Pattern(std::move(entries));
}

std::vector<std::int64_t> Pattern::values() const {
    return std::vector<std::int64_t>(entries_.begin(), entries_.end());
}

std::string Pattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(entries_[i]);
    }
    return out;
}

bool is_order_isomorphic(std::span<const std::int64_t> a,
                         std::span<const std::int64_t> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if ((a[i] < a[j]) != (b[i] < b[j])) return false;
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
        }
    return true;
}

namespace {

// Per pattern slot j, the earlier slot holding the largest pattern value
// below p[j] (pred) and the smallest above it (succ), or -1. Checking a
// candidate element against just these two slots is enough: any other
// earlier slot's constraint is implied.
struct SlotBounds {
    std::vector<int> pred, succ;
};

SlotBounds slot_bounds(const Pattern& p) {
    const int k = p.size();
    SlotBounds b;
    b.pred.assign(static_cast<std::size_t>(k), -1);
    b.succ.assign(static_cast<std::size_t>(k), -1);
    for (int j = 0; j < k; ++j) {
        int best_lo = 0, best_hi = k + 1;
        for (int a = 0; a < j; ++a) {
            if (p[a] < p[j] && p[a] > best_lo) {
                best_lo = p[a];
                b.pred[static_cast<std::size_t>(j)] = a;
            }
            if (p[a] > p[j] && p[a] < best_hi) {
                best_hi = p[a];
                b.succ[static_cast<std::size_t>(j)] = a;
            }
        }
    }
    return b;
}

bool dfs_contains(std::span<const std::int64_t> s, const Pattern& p,
                  const SlotBounds& bounds, std::vector<std::size_t>& chosen,
                  int slot, std::size_t from) {
    const int k = p.size();
    if (slot == k) return true;
    const std::size_t need = static_cast<std::size_t>(k - slot);
    if (s.size() < need || from > s.size() - need) return false;
    const int pred = bounds.pred[static_cast<std::size_t>(slot)];
    const int succ = bounds.succ[static_cast<std::size_t>(slot)];
    for (std::size_t i = from; i + need <= s.size(); ++i) {
        if (pred >= 0 && !(s[chosen[static_cast<std::size_t>(pred)]] < s[i])) continue;
        if (succ >= 0 && !(s[i] < s[chosen[static_cast<std::size_t>(succ)]])) continue;
        chosen[static_cast<std::size_t>(slot)] = i;
        if (dfs_contains(s, p, bounds, chosen, slot + 1, i + 1)) return true;
    }
    return false;
}

} // namespace

bool contains_pattern(std::span<const std::int64_t> s, const Pattern& p) {
    const int k = p.size();
    if (static_cast<std::size_t>(k) > s.size()) return false;
    if (k == 1) return !s.empty();
    SlotBounds bounds = slot_bounds(p);
    std::vector<std::size_t> chosen(static_cast<std::size_t>(k));
    return dfs_contains(s, p, bounds, chosen, 0, 0);
}

Pattern inverse(const Pattern& sigma) {
    const int k = sigma.size();
    std::vector<int> tau(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        tau[static_cast<std::size_t>(sigma[i] - 1)] = i + 1;
    return Pattern(std::move(tau));
}

std::uint64_t factorial(int k) {
    if (k < 0 || k > 20) throw std::out_of_range("factorial: k outside 0..20");
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t perm_rank(const Pattern& p) {
    const int k = p.size();
    if (k > 20) throw std::out_of_range("perm_rank: length > 20");
    std::uint64_t rank = 0;
    for (int i = 0; i < k; ++i) {
        std::uint64_t smaller_after = 0;
        for (int j = i + 1; j < k; ++j)
            if (p[j] < p[i]) ++smaller_after;
        rank += smaller_after * factorial(k - 1 - i);
    }
    return rank;
}

Pattern perm_unrank(std::uint64_t rank, int k) {
    if (k < 1 || k > 20) throw std::out_of_range("perm_unrank: k outside 1..20");
    if (rank >= factorial(k)) throw std::out_of_range("perm_unrank: rank >= k!");
    std::vector<int> avail(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) avail[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const std::uint64_t f = factorial(k - 1 - i);
        const std::size_t digit = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(avail[digit]);
        avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return Pattern(std::move(out));
}

void binary_insertion_sort(std::span<Key> keys, std::uint64_t& comparisons) {
    KeyLess less(comparisons);
    for (std::size_t i = 1; i < keys.size(); ++i) {
        const Key item = keys[i];
        // upper_bound over keys[0..i)
        std::size_t lo = 0, hi = i;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (less(item, keys[mid]))
                hi = mid;
            else
                lo = mid + 1;
        }
        for (std::size_t j = i; j > lo; --j) keys[j] = keys[j - 1];
        keys[lo] = item;
    }
}

} // namespace patsort
