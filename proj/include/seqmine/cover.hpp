#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqmine/model.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

/// Raised by the covering objective when a multiset requests a multiplicity
/// the pattern's distribution has no entry for.
class InfeasibleMultiplicityError : public std::domain_error {
public:
    InfeasibleMultiplicityError(const Sequence& pattern, std::uint32_t multiplicity,
                                std::size_t dist_size);
};

/// Log of the count bound on interleavings of n items: -ln(n!), accumulated
/// as a running sum of ln j so large n never overflows.
double permutation_penalty(std::size_t total_items);

/// Objective of a covering multiset: sum over chosen patterns of
/// ln pi_S[multiplicity] plus permutation_penalty(total items). A recorded
/// zero probability contributes the kLogZero sentinel; an unrecorded
/// multiplicity throws InfeasibleMultiplicityError.
double covering_objective(const PatternMultiset& chosen, const Model& model);

/// Per-row log-probability under the model: covering_objective plus
/// ln pi_S[0] for every model pattern the covering does not use. Sentinel
/// semantics throughout (never throws on zero/unrecorded probabilities).
double row_objective(const PatternMultiset& chosen, const Model& model);

/// A non-overlapping multiset covering of one row. Every row position is
/// covered by exactly one occurrence.
struct Covering {
    PatternMultiset chosen;
    std::vector<Occurrence> assignments;
    double objective_value = 0.0;  // covering_objective of `chosen`

    bool uses(const Sequence& pattern) const { return chosen.contains(pattern); }
    std::uint32_t multiplicity(const Sequence& pattern) const {
        return chosen.multiplicity(pattern);
    }
};

/// Candidate pattern for the greedy cover: model index plus the maximum
/// number of disjoint occurrences available in the row.
struct SupportedPattern {
    std::size_t model_index;
    std::uint32_t max_multiplicity;
};

/// Greedy covering of one row: repeatedly commits the pattern occurrence
/// with the highest marginal gain per covered item until every position is
/// covered. The gain of raising S from multiplicity m to m+1 is
/// ln pi_S[m+1] - ln pi_S[m] minus the permutation-penalty increment; at
/// m = 0 the -ln pi_S[0] term is what makes a zero-pi_S[0] pattern mandatory
/// wherever it still embeds. Ties break toward longer patterns, then
/// lexicographically smaller ones. Occurrences embed greedy-leftmost into
/// the currently uncovered positions.
///
/// Throws CoverageError when some position cannot be covered.
Covering greedy_cover(const Sequence& row, const std::vector<SupportedPattern>& supported,
                      const Model& model, std::size_t row_index = 0);

/// Convenience overload matching supported_multiset output. Every multiset
/// member must be a model pattern.
Covering greedy_cover(const Sequence& row, const PatternMultiset& supported, const Model& model,
                      std::size_t row_index = 0);

/// Property-test helper: samples `trials` random nested multiset pairs
/// C subset-of D with equal multiplicity of a probe pattern and checks the
/// diminishing-gain inequality for covering_objective. True iff no trial
/// violates it.
bool check_submodularity(const Model& model, std::size_t trials, std::uint64_t seed);

}  // namespace seqmine
