#include "patsort/merge.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace patsort {

namespace {

// Binary min-heap of run ids ordered by head key. Ids inside the heap must
// not have their cursors advanced; the merge loop pops ids, consumes, then
// pushes survivors back.
class RunHeap {
public:
    RunHeap(std::vector<Run>& runs, std::uint64_t& comparisons)
        : runs_(&runs), cmp_(&comparisons) {}

    std::size_t size() const { return heap_.size(); }

    void push(std::uint32_t id) {
        heap_.push_back(id);
        std::size_t i = heap_.size() - 1;
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (!less(heap_[i], heap_[parent])) break;
            std::swap(heap_[i], heap_[parent]);
            i = parent;
        }
    }

    std::uint32_t pop() {
        const std::uint32_t top = heap_.front();
        heap_.front() = heap_.back();
        heap_.pop_back();
        std::size_t i = 0;
        const std::size_t n = heap_.size();
        for (;;) {
            std::size_t best = i;
            const std::size_t l = 2 * i + 1, r = 2 * i + 2;
            if (l < n && less(heap_[l], heap_[best])) best = l;
            if (r < n && less(heap_[r], heap_[best])) best = r;
            if (best == i) break;
            std::swap(heap_[i], heap_[best]);
            i = best;
        }
        return top;
    }

private:
    bool less(std::uint32_t a, std::uint32_t b) const {
        ++*cmp_;
        const Key& ka = (*runs_)[a].head();
        const Key& kb = (*runs_)[b].head();
        return ka.value < kb.value || (ka.value == kb.value && ka.tie < kb.tie);
    }

    std::vector<Run>* runs_;
    std::uint64_t* cmp_;
    std::vector<std::uint32_t> heap_;
};

KeySequence merge_ids_below(std::vector<Run>& runs, std::span<const std::uint32_t> ids,
                            const std::optional<Key>& cutoff, std::uint64_t& comparisons) {
    KeySequence emitted;
    RunHeap heap(runs, comparisons);
    for (std::uint32_t id : ids)
        if (!runs[id].exhausted()) heap.push(id);
    while (heap.size() > 0) {
        const std::uint32_t id = heap.pop();
        Run& run = runs[id];
        if (cutoff) {
            ++comparisons;
            const Key& h = run.head();
            if (!(h.value < cutoff->value ||
                  (h.value == cutoff->value && h.tie < cutoff->tie)))
                break; // smallest head reached the cutoff; all others follow
        }
        emitted.push_back(run.elems[run.cursor++]);
        if (!run.exhausted()) heap.push(id);
    }
    return emitted;
}

Run merge_pair(std::vector<Run>& runs, std::uint32_t a, std::uint32_t b,
               std::uint64_t& comparisons) {
    const std::uint32_t ids[2] = {a, b};
    return Run(merge_ids_below(runs, ids, std::nullopt, comparisons));
}

void finish_round_record(RoundRecord& rec, const KeySequence& emitted) {
    rec.emitted = emitted.size();
    rec.heavy = !emitted.empty();
    if (!emitted.empty()) {
        rec.heavy_value = emitted.front().value;
        for (const Key& k : emitted)
            if (k.value != rec.heavy_value) {
                rec.heavy = false;
                break;
            }
    }
}

std::vector<Run> drop_exhausted(std::vector<Run> runs) {
    std::vector<Run> kept;
    kept.reserve(runs.size());
    for (Run& r : runs)
        if (!r.exhausted()) kept.push_back(std::move(r));
    return kept;
}

// One budgeted round: pops the d+1 smallest heads, merges the first d of
// them strictly below the last head, records the round, pushes survivors
// back. Requires |Q| > d.
void run_round(std::vector<Run>& runs, RunHeap& heap, std::size_t d,
               PhaseRecord& phase, KeySequence& out, std::uint64_t& comparisons) {
    assert(heap.size() >= d + 1);
    std::vector<std::uint32_t> popped;
    popped.reserve(d + 1);
    for (std::size_t i = 0; i < d + 1; ++i) popped.push_back(heap.pop());

    RoundRecord rec;
    rec.touched.assign(popped.begin(), popped.begin() + static_cast<std::ptrdiff_t>(d));
    std::sort(rec.touched.begin(), rec.touched.end());
    rec.cutoff = runs[popped[d]].head();

    KeySequence emitted = merge_ids_below(
        runs, std::span<const std::uint32_t>(popped.data(), d), rec.cutoff, comparisons);
    finish_round_record(rec, emitted);
    out.insert(out.end(), emitted.begin(), emitted.end());
    phase.rounds.push_back(std::move(rec));

    for (std::uint32_t id : popped)
        if (!runs[id].exhausted()) heap.push(id);
}

// Terminal round: everything left in the queue is merged to exhaustion.
void run_merge_all(std::vector<Run>& runs, RunHeap& heap, PhaseRecord& phase,
                   KeySequence& out, std::uint64_t& comparisons) {
    std::vector<std::uint32_t> popped;
    popped.reserve(heap.size());
    while (heap.size() > 0) popped.push_back(heap.pop());

    RoundRecord rec;
    rec.touched = popped;
    std::sort(rec.touched.begin(), rec.touched.end());

    KeySequence emitted = merge_ids_below(runs, popped, std::nullopt, comparisons);
    finish_round_record(rec, emitted);
    out.insert(out.end(), emitted.begin(), emitted.end());
    phase.rounds.push_back(std::move(rec));
}

} // namespace

KeySequence kway_merge_below(std::vector<Run>& runs, const std::optional<Key>& cutoff,
                             std::uint64_t& comparisons) {
    std::vector<std::uint32_t> ids;
    ids.reserve(runs.size());
    for (std::uint32_t i = 0; i < runs.size(); ++i) ids.push_back(i);
    return merge_ids_below(runs, ids, cutoff, comparisons);
}

std::pair<KeySequence, MergeStats> merge_known(std::vector<Run> runs, std::size_t d) {
    if (d < 1) throw std::invalid_argument("merge_known: d < 1");
    MergeStats stats;
    KeySequence out;
    runs = drop_exhausted(std::move(runs));
    const std::size_t m = runs.size();
    if (m == 0) return {std::move(out), std::move(stats)};

    // Pre-merge consecutive d-tuples; when d does not divide m the last two
    // merged runs are merged once more, leaving exactly floor(m/d).
    std::vector<Run> merged;
    for (std::size_t g = 0; g * d < m; ++g) {
        std::vector<std::uint32_t> ids;
        for (std::size_t i = g * d; i < std::min(m, (g + 1) * d); ++i)
            ids.push_back(static_cast<std::uint32_t>(i));
        merged.emplace_back(merge_ids_below(runs, ids, std::nullopt, stats.comparisons));
    }
    if (merged.size() >= 2 && m % d != 0) {
        std::vector<Run> last_two;
        last_two.push_back(std::move(merged[merged.size() - 2]));
        last_two.push_back(std::move(merged.back()));
        merged.pop_back();
        merged.back() = merge_pair(last_two, 0, 1, stats.comparisons);
    }

    PhaseRecord phase;
    phase.d = d;
    phase.runs_at_start = merged.size();

    if (merged.size() == 1) {
        // Everything collapsed in the pre-merge; copy and be done.
        out = std::move(merged.front().elems);
        stats.elements_emitted = out.size();
        stats.phases.push_back(std::move(phase));
        return {std::move(out), std::move(stats)};
    }

    RunHeap heap(merged, stats.comparisons);
    for (std::uint32_t i = 0; i < merged.size(); ++i) heap.push(i);
    for (;;) {
        if (heap.size() <= d) {
            run_merge_all(merged, heap, phase, out, stats.comparisons);
            break;
        }
        run_round(merged, heap, d, phase, out, stats.comparisons);
    }
    stats.elements_emitted = out.size();
    stats.phases.push_back(std::move(phase));
    return {std::move(out), std::move(stats)};
}

std::pair<KeySequence, MergeStats> merge_agnostic(std::vector<Run> runs) {
    MergeStats stats;
    KeySequence out;
    runs = drop_exhausted(std::move(runs));
    std::size_t d = 1;
    bool done = runs.empty();
    while (!done) {
        d *= 2;

        // Pair-merge the surviving runs left to right; an odd leftover is
        // merged into the last pair's result.
        std::vector<Run> paired;
        const std::size_t s = runs.size();
        if (s == 1) {
            paired.push_back(std::move(runs.front()));
        } else {
            for (std::size_t g = 0; 2 * g + 1 < s; ++g)
                paired.push_back(merge_pair(runs, static_cast<std::uint32_t>(2 * g),
                                            static_cast<std::uint32_t>(2 * g + 1),
                                            stats.comparisons));
            if (s % 2 != 0) {
                std::vector<Run> tail;
                tail.push_back(std::move(paired.back()));
                tail.push_back(std::move(runs.back()));
                paired.back() = merge_pair(tail, 0, 1, stats.comparisons);
            }
        }
        runs = std::move(paired);

        PhaseRecord phase;
        phase.d = d;
        phase.runs_at_start = runs.size();
        const std::size_t m_i = runs.size();

        RunHeap heap(runs, stats.comparisons);
        for (std::uint32_t i = 0; i < runs.size(); ++i)
            if (!runs[i].exhausted()) heap.push(i);

        for (std::size_t r = 1; heap.size() > 0 && r <= m_i; ++r) {
            if (heap.size() <= d) {
                run_merge_all(runs, heap, phase, out, stats.comparisons);
                done = true;
                break;
            }
            run_round(runs, heap, d, phase, out, stats.comparisons);
        }
        stats.phases.push_back(std::move(phase));
        if (!done) {
            runs = drop_exhausted(std::move(runs));
            // A budgeted round never consumes the run providing the cutoff,
            // so an unfinished phase always leaves survivors.
            assert(!runs.empty());
            if (runs.empty()) break;
        }
    }
    stats.elements_emitted = out.size();
    return {std::move(out), std::move(stats)};
}

CertificateMatrices certificate_matrices(const MergeStats& stats, std::size_t phase) {
    if (phase >= stats.phases.size())
        throw std::out_of_range("certificate_matrices: no such phase");
    const PhaseRecord& ph = stats.phases[phase];
    const int cols = static_cast<int>(ph.runs_at_start);

    CertificateMatrices certs;
    certs.touch = BinaryMatrix(cols, static_cast<int>(ph.rounds.size()));
    for (std::size_t j = 0; j < ph.rounds.size(); ++j)
        for (std::uint32_t id : ph.rounds[j].touched)
            certs.touch.set(static_cast<int>(id) + 1, static_cast<int>(j) + 1);

    // Full rounds touch exactly d runs; only they enter the heavy and light
    // certificates.
    std::map<std::int64_t, std::vector<std::uint32_t>> heavy_by_value;
    std::vector<const RoundRecord*> full_light;
    for (const RoundRecord& rec : ph.rounds) {
        if (rec.touched.size() != ph.d) continue;
        if (rec.heavy) {
            auto& ids = heavy_by_value[rec.heavy_value];
            ids.insert(ids.end(), rec.touched.begin(), rec.touched.end());
        } else {
            full_light.push_back(&rec);
        }
    }

    certs.heavy = BinaryMatrix(cols, static_cast<int>(heavy_by_value.size()));
    int row = 1;
    for (const auto& [value, ids] : heavy_by_value) {
        for (std::uint32_t id : ids) certs.heavy.set(static_cast<int>(id) + 1, row);
        ++row;
    }

    const std::size_t odd_count = (full_light.size() + 1) / 2;
    certs.odd_light = BinaryMatrix(cols, static_cast<int>(odd_count));
    for (std::size_t j = 0; j < odd_count; ++j)
        for (std::uint32_t id : full_light[2 * j]->touched)
            certs.odd_light.set(static_cast<int>(id) + 1, static_cast<int>(j) + 1);

    return certs;
}

} // namespace patsort
