#include "seqmine/match.hpp"

#include <algorithm>
#include <sstream>

namespace seqmine {

std::vector<std::pair<Sequence, std::uint32_t>> PatternMultiset::sorted_entries() const {
    std::vector<std::pair<Sequence, std::uint32_t>> out(counts_.begin(), counts_.end());
    std::sort(out.begin(), out.end());
    return out;
}

CoverageError::CoverageError(std::size_t row_index, std::vector<Item> missing_items)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "row " << row_index << " cannot be covered; items without a usable pattern:";
          for (Item v : missing_items) msg << ' ' << v;
          return msg.str();
      }()),
      row_index_(row_index),
      missing_items_(std::move(missing_items)) {}

bool is_subsequence(const Sequence& pattern, const Sequence& row) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < row.size() && k < pattern.size(); ++i) {
        if (row[i] == pattern[k]) ++k;
    }
    return k == pattern.size();
}

std::optional<std::vector<std::uint32_t>> leftmost_embedding(const Sequence& pattern,
                                                             const Sequence& row,
                                                             const std::vector<char>& available) {
    std::vector<std::uint32_t> positions;
    positions.reserve(pattern.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < row.size() && k < pattern.size(); ++i) {
        if (available[i] && row[i] == pattern[k]) {
            positions.push_back(static_cast<std::uint32_t>(i));
            ++k;
        }
    }
    if (k != pattern.size()) return std::nullopt;
    return positions;
}

DisjointOccurrences max_disjoint_occurrences(const Sequence& pattern, const Sequence& row) {
    DisjointOccurrences result;
    std::vector<char> available(row.size(), 1);
    for (;;) {
        auto embedding = leftmost_embedding(pattern, row, available);
        if (!embedding) break;
        for (std::uint32_t p : *embedding) available[p] = 0;
        result.occurrences.push_back(Occurrence{pattern, std::move(*embedding)});
        ++result.count;
    }
    return result;
}

std::uint32_t support(const Sequence& pattern, const SequenceDatabase& db) {
    std::uint32_t n = 0;
    for (const Sequence& row : db.rows) {
        if (is_subsequence(pattern, row)) ++n;
    }
    return n;
}

std::vector<std::uint32_t> supporting_rows(const Sequence& pattern, const SequenceDatabase& db) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < db.rows.size(); ++i) {
        if (is_subsequence(pattern, db.rows[i])) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

PatternMultiset supported_multiset(const Sequence& row,
                                   const std::vector<Sequence>& model_patterns) {
    PatternMultiset out;
    for (const Sequence& pattern : model_patterns) {
        if (pattern.empty() || pattern.size() > row.size()) continue;
        auto found = max_disjoint_occurrences(pattern, row);
        if (found.count > 0) out.add(pattern, found.count);
    }
    return out;
}

}  // namespace seqmine
