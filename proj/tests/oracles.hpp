#pragma once

// Brute-force reference implementations for property tests. These stay
// independent of the library's algorithms: embeddings are enumerated
// exhaustively and coverings by exact recursion over position partitions.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "seqmine/cover.hpp"
#include "seqmine/model.hpp"
#include "seqmine/types.hpp"

namespace oracle {

using seqmine::Item;
using seqmine::Model;
using seqmine::PatternMultiset;
using seqmine::Sequence;

using Mask = std::uint32_t;  // rows are capped well below 32 positions

inline void collect_embeddings(const Sequence& pattern, const Sequence& row, std::size_t k,
                               std::size_t start, Mask acc, std::vector<Mask>& out) {
    if (k == pattern.size()) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = start; i < row.size(); ++i) {
        if (row[i] == pattern[k])
            collect_embeddings(pattern, row, k + 1, i + 1, acc | (Mask{1} << i), out);
    }
}

inline std::vector<Mask> all_embeddings(const Sequence& pattern, const Sequence& row) {
    std::vector<Mask> out;
    collect_embeddings(pattern, row, 0, 0, 0, out);
    return out;
}

inline std::size_t max_packing(const std::vector<Mask>& masks, std::size_t from, Mask used) {
    std::size_t best = 0;
    for (std::size_t i = from; i < masks.size(); ++i) {
        if (masks[i] & used) continue;
        best = std::max(best, 1 + max_packing(masks, i + 1, used | masks[i]));
    }
    return best;
}

/// Maximum number of pairwise disjoint embeddings, by exhaustive search.
inline std::size_t max_disjoint(const Sequence& pattern, const Sequence& row) {
    auto masks = all_embeddings(pattern, row);
    return max_packing(masks, 0, 0);
}

struct BestCovering {
    bool found = false;
    double objective = 0.0;  // full per-row objective of the best covering
    PatternMultiset chosen;
};

inline void best_covering_rec(const Sequence& row, const Model& model, Mask uncovered,
                              PatternMultiset& chosen, BestCovering& best) {
    if (uncovered == 0) {
        double value = seqmine::row_objective(chosen, model);
        if (!best.found || value > best.objective) {
            best.found = true;
            best.objective = value;
            best.chosen = chosen;
        }
        return;
    }
    // Extend by occurrences covering the lowest uncovered position; every
    // exact cover is reached exactly once this way.
    std::size_t first = 0;
    while (!(uncovered & (Mask{1} << first))) ++first;

    std::vector<char> available(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) available[i] = (uncovered >> i) & 1;

    for (std::size_t p = 0; p < model.size(); ++p) {
        const Sequence& pattern = model.pattern(p);
        if (pattern.empty() || pattern[0] != row[first]) continue;
        std::vector<Mask> embeddings;
        collect_embeddings(pattern, row, 0, 0, 0, embeddings);
        for (Mask m : embeddings) {
            if ((m & uncovered) != m) continue;          // embeds in uncovered positions
            if (!(m & (Mask{1} << first))) continue;     // anchored at the lowest position
            Mask low = m & (~m + 1);
            if (low != (Mask{1} << first)) continue;     // first pattern item sits there
            chosen.add(pattern);
            best_covering_rec(row, model, uncovered & ~m, chosen, best);
            PatternMultiset reduced;
            for (const auto& [seq, count] : chosen.entries()) {
                std::uint32_t keep = seq == pattern ? count - 1 : count;
                reduced.add(seq, keep);
            }
            chosen = reduced;
        }
    }
}

/// Exhaustive best covering of the row under the full per-row objective.
inline BestCovering best_covering(const Sequence& row, const Model& model) {
    BestCovering best;
    if (row.empty()) {
        best.found = true;
        best.objective = seqmine::row_objective({}, model);
        return best;
    }
    PatternMultiset chosen;
    Mask all = row.size() >= 32 ? ~Mask{0} : (Mask{1} << row.size()) - 1;
    best_covering_rec(row, model, all, chosen, best);
    return best;
}

/// Term-by-term recomputation of the covering objective along an
/// independent code path (explicit logs, lgamma for the factorial).
inline double covering_objective_reference(const PatternMultiset& chosen, const Model& model) {
    double value = 0.0;
    for (const auto& [pattern, count] : chosen.entries())
        value += std::log(model.dist(model.index_of(pattern)).at(count));
    double items = static_cast<double>(chosen.total_items());
    return value - std::lgamma(items + 1.0);
}

}  // namespace oracle
