#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace seqmine {

/// An item is a dense index into the vocabulary of the database it came from.
using Item = std::uint32_t;

/// Ordered list of items. Used both for database rows and for patterns;
/// patterns always have length >= 1, rows may be empty.
using Sequence = std::vector<Item>;

struct SequenceHash {
    std::size_t operator()(const Sequence& s) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (Item v : s) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// a · b
inline Sequence concat(const Sequence& a, const Sequence& b) {
    Sequence out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

struct SequenceDatabase {
    std::vector<Sequence> rows;
    std::size_t vocab_size = 0;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
};

/// One embedding of a pattern into a row: positions are strictly increasing
/// row indices with row[positions[k]] == pattern[k].
struct Occurrence {
    Sequence pattern;
    std::vector<std::uint32_t> positions;
};

/// Multiset of sequences with multiplicities >= 1.
class PatternMultiset {
public:
    using Map = std::unordered_map<Sequence, std::uint32_t, SequenceHash>;

    PatternMultiset() = default;
    PatternMultiset(std::initializer_list<std::pair<Sequence, std::uint32_t>> init) {
        for (const auto& [seq, n] : init) add(seq, n);
    }

    void add(const Sequence& s, std::uint32_t n = 1) {
        if (n == 0) return;
        counts_[s] += n;
    }

    std::uint32_t multiplicity(const Sequence& s) const {
        auto it = counts_.find(s);
        return it == counts_.end() ? 0u : it->second;
    }

    bool contains(const Sequence& s) const { return counts_.count(s) > 0; }
    bool empty() const { return counts_.empty(); }
    std::size_t distinct_count() const { return counts_.size(); }

    /// Total item count over all member occurrences: sum of count * |S|.
    std::size_t total_items() const {
        std::size_t n = 0;
        for (const auto& [seq, count] : counts_) n += seq.size() * count;
        return n;
    }

    const Map& entries() const { return counts_; }

    /// Entries in lexicographic sequence order, for any order-sensitive use.
    std::vector<std::pair<Sequence, std::uint32_t>> sorted_entries() const;

    bool operator==(const PatternMultiset& other) const { return counts_ == other.counts_; }

private:
    Map counts_;
};

/// Thrown when a row cannot be fully covered by the model's patterns.
class CoverageError : public std::runtime_error {
public:
    CoverageError(std::size_t row_index, std::vector<Item> missing_items);

    std::size_t row_index() const { return row_index_; }
    const std::vector<Item>& missing_items() const { return missing_items_; }

private:
    std::size_t row_index_;
    std::vector<Item> missing_items_;
};

}  // namespace seqmine
