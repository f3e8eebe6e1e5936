#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "seqmine/cover.hpp"
#include "seqmine/model.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

struct RankedPattern {
    Sequence pattern;
    double interestingness = 0.0;       // explained rows / supporting rows
    double inclusion_probability = 0.0;  // 1 - pi_S[0]
    std::uint32_t support = 0;
    std::uint32_t explained_rows = 0;

    bool is_singleton() const { return pattern.size() == 1; }
};

/// Fraction of the pattern's supporting rows whose covering uses it at least
/// once. Throws std::domain_error when the pattern has no support.
double interestingness(const Sequence& pattern, const std::vector<Covering>& coverings,
                       const SequenceDatabase& db);

/// All model patterns ordered by interestingness descending, ties by
/// inclusion probability, then support, then lexicographically. Patterns
/// with zero support rank with interestingness 0.
std::vector<RankedPattern> rank_patterns(const Model& model, const std::vector<Covering>& coverings,
                                         const SequenceDatabase& db, unsigned threads = 1);

/// Keep the first k non-singleton entries.
std::vector<RankedPattern> top_nonsingleton(const std::vector<RankedPattern>& ranked,
                                            std::size_t k);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
};

/// Over the top-k mined patterns: precision = hits/k, recall =
/// hits/|generating|. Throws std::invalid_argument on an empty generating
/// set. Pattern identity is exact sequence equality.
PrecisionRecall precision_recall_at_k(const std::vector<Sequence>& mined,
                                      const std::set<Sequence>& generating, std::size_t k);

/// One precision/recall point per prefix length k = 1..|mined|.
std::vector<PrecisionRecall> precision_recall_curve(const std::vector<Sequence>& mined,
                                                    const std::set<Sequence>& generating);

/// Interpolated precision at recall levels 0.0, 0.1, ..., 1.0: the maximum
/// precision over all curve points with recall >= level.
std::vector<double> interpolated_precision_11pt(const std::vector<PrecisionRecall>& curve);

struct RedundancyMetrics {
    double isd = 0.0;           // mean over patterns of min edit distance to another
    double cs = 0.0;            // mean count of other members containing the pattern
    std::size_t unique_items = 0;
};

/// Item-level Levenshtein distance with unit costs.
std::size_t edit_distance(const Sequence& a, const Sequence& b);

/// Redundancy of the top_k non-singleton prefix of `patterns`. Throws
/// std::invalid_argument when fewer than two patterns remain.
RedundancyMetrics redundancy_metrics(const std::vector<Sequence>& patterns, std::size_t top_k);

/// Binary matrix: entry (i, j) = 1 iff patterns[j] embeds in row i. Uses the
/// first k patterns; k must not exceed |patterns|.
std::vector<std::vector<std::uint8_t>> feature_matrix(const SequenceDatabase& db,
                                                      const std::vector<Sequence>& patterns,
                                                      std::size_t k, unsigned threads = 1);

}  // namespace seqmine
