#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqmine/types.hpp"

namespace seqmine {

/// True iff pattern embeds into row as a (gap-allowing, order-preserving)
/// subsequence. Decided by a greedy leftmost scan.
bool is_subsequence(const Sequence& pattern, const Sequence& row);

/// Leftmost embedding of pattern into the row positions for which
/// available[p] is true. Empty result if no embedding exists.
std::optional<std::vector<std::uint32_t>> leftmost_embedding(const Sequence& pattern,
                                                             const Sequence& row,
                                                             const std::vector<char>& available);

struct DisjointOccurrences {
    std::uint32_t count = 0;
    std::vector<Occurrence> occurrences;
};

/// Maximum number of pairwise position-disjoint embeddings of pattern into
/// row, with one witness set. Computed by iterated greedy-leftmost
/// extraction; oracle-equivalence on small rows is covered by tests.
DisjointOccurrences max_disjoint_occurrences(const Sequence& pattern, const Sequence& row);

/// Number of database rows containing pattern as a subsequence.
std::uint32_t support(const Sequence& pattern, const SequenceDatabase& db);

/// Row ids (ascending) of the rows containing pattern.
std::vector<std::uint32_t> supporting_rows(const Sequence& pattern, const SequenceDatabase& db);

/// The multiset of model patterns supported by one row, each with
/// multiplicity max_disjoint_occurrences(S, row).count.
PatternMultiset supported_multiset(const Sequence& row,
                                   const std::vector<Sequence>& model_patterns);

}  // namespace seqmine
