#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "seqmine/model.hpp"
#include "seqmine/rng.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

/// Draws one multiplicity per model pattern from its distribution and
/// returns the multiset of patterns selected at least once.
PatternMultiset sample_multiplicities(const Model& model, RandomSource& rng);

/// Merges the multiset's occurrences into one sequence, one pattern at a
/// time: the pattern's items are spliced, in order, into uniformly chosen
/// gaps of the sequence built so far (insertion points drawn as a uniform
/// ordered combination with repetition). Each source pattern embeds as a
/// subsequence of the result.
Sequence interleave_sample(const PatternMultiset& multiset, RandomSource& rng);

/// Every sequence obtainable by interleaving all occurrences of the
/// multiset, by exhaustive recursion. Guarded to at most 12 total items.
std::set<Sequence> enumerate_interleavings(const PatternMultiset& multiset);

/// Exact-uniform draw over enumerate_interleavings (small multisets only).
Sequence uniform_interleaving(const PatternMultiset& multiset, RandomSource& rng);

/// n_rows independent draws of sample_multiplicities + interleave_sample.
/// Rows whose multiset comes up empty are redrawn, so the model must give
/// at least one pattern a positive inclusion probability. Each row uses its
/// own generator forked from (rng, row index), making output independent of
/// worker scheduling.
SequenceDatabase sample_database(const Model& model, std::size_t n_rows, RandomSource& rng,
                                 bool allow_empty = false, unsigned threads = 1);

struct ParallelProcessData {
    SequenceDatabase db;
    std::set<Sequence> generating;  // per-process ground truth patterns
};

/// Benchmark generator: n_processes independent processes each cycle
/// through their own process_items items in order; every step appends the
/// next item of a uniformly chosen process until total_length items, then
/// the stream splits into rows of row_length. Item ids are
/// process * process_items + position. The generating set holds every
/// contiguous window (with wraparound, lengths 1..process_items) of each
/// process's cycle.
ParallelProcessData parallel_process_db(std::size_t n_processes, std::size_t process_items,
                                        std::size_t total_length, std::size_t row_length,
                                        RandomSource& rng);

}  // namespace seqmine
