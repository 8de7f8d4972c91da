#pragma once

#include "patsort/core.hpp"
#include "patsort/matrix_oracle.hpp"

#include <optional>

namespace patsort {

// A presorted ascending subsequence, consumed front to back. Strictness of
// the ascent is guaranteed by the tie components of the keys.
struct Run {
    KeySequence elems;
    std::size_t cursor = 0;

    Run() = default;
    explicit Run(KeySequence sorted) : elems(std::move(sorted)) {}

    bool exhausted() const { return cursor >= elems.size(); }
    std::size_t remaining() const { return elems.size() - cursor; }
    const Key& head() const { return elems[cursor]; }
};

// One emission round. `touched` holds the ids (within the phase's run list,
// ascending) of the runs that were merged; the cutoff is the head of the
// run left untouched, absent only in the terminal merge-everything round.
struct RoundRecord {
    std::vector<std::uint32_t> touched;
    std::optional<Key> cutoff;
    std::size_t emitted = 0;
    bool heavy = false;            // all emitted elements share one value
    std::int64_t heavy_value = 0;  // that value, meaningful when heavy
};

struct PhaseRecord {
    std::size_t d = 0;             // merge arity budget of the phase
    std::size_t runs_at_start = 0; // m_i
    std::vector<RoundRecord> rounds;
};

struct MergeStats {
    std::vector<PhaseRecord> phases;
    std::uint64_t comparisons = 0;
    std::size_t elements_emitted = 0;
};

// Merges all runs, emitting only elements strictly below `cutoff` (all of
// them when absent). Standard binary-heap multi-way merge; every key
// comparison is counted.
KeySequence kway_merge_below(std::vector<Run>& runs, const std::optional<Key>& cutoff,
                             std::uint64_t& comparisons);

// Round-based merge for a known arity budget d >= 1: consecutive d-tuples
// are pre-merged, then each round pops the d+1 smallest heads and merges
// the first d of them below the last head. Output is the full ascending
// merge of the inputs; stats record one phase.
std::pair<KeySequence, MergeStats> merge_known(std::vector<Run> runs, std::size_t d);

// Phased merge that learns the arity: phase i doubles d, pair-merges the
// surviving runs, then spends at most m_i rounds before doubling again.
// Output produced so far is always a sorted prefix of the final result.
std::pair<KeySequence, MergeStats> merge_agnostic(std::vector<Run> runs);

// Avoidance certificates lifted from one phase of a recorded merge:
//   touch     - run x round incidence, every round of the phase;
//   heavy     - run x value incidence over full rounds that emitted a single
//               value, rows in ascending value order;
//   odd_light - run x round incidence over the 1st, 3rd, 5th ... full rounds
//               that emitted at least two distinct values.
// Columns are the phase's runs; rows are numbered bottom to top in round
// (resp. value) order.
struct CertificateMatrices {
    BinaryMatrix touch, heavy, odd_light;
};

CertificateMatrices certificate_matrices(const MergeStats& stats, std::size_t phase);

} // namespace patsort
