#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "seqmine/types.hpp"

namespace seqmine {

/// Stand-in for ln 0 that keeps profit comparisons total-ordered.
inline constexpr double kLogZero = -1e100;

/// ln p, with zero and out-of-range probabilities mapped to the sentinel.
double safe_log(double p);

/// Categorical distribution over how many times a pattern is included in a
/// row; index = multiplicity. Valid distributions have length >= 2,
/// non-negative entries summing to 1 within 1e-9.
class MultiplicityDistribution {
public:
    MultiplicityDistribution() : probs_{1.0, 0.0} {}
    explicit MultiplicityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

    /// Inclusion probability pair (1-p, p).
    static MultiplicityDistribution bernoulli(double p) {
        return MultiplicityDistribution({1.0 - p, p});
    }

    /// (0, 1, ..., 1): multiplicity zero forbidden, every positive
    /// multiplicity up to max_multiplicity maximally likely. Used when
    /// evaluating a fresh candidate.
    static MultiplicityDistribution forced(std::uint32_t max_multiplicity);

    std::size_t size() const { return probs_.size(); }
    double at(std::size_t m) const { return m < probs_.size() ? probs_[m] : 0.0; }
    double log_at(std::size_t m) const { return safe_log(at(m)); }
    const std::vector<double>& probs() const { return probs_; }

    /// Throws std::invalid_argument on a malformed distribution.
    void validate() const;

    bool operator==(const MultiplicityDistribution& other) const = default;

private:
    std::vector<double> probs_;
};

/// The learned object: an ordered set of patterns with one multiplicity
/// distribution each. Singletons of every database item stay present at all
/// times so any row remains coverable.
class Model {
public:
    Model() = default;
    explicit Model(std::size_t vocab_size) : vocab_size_(vocab_size) {}

    std::size_t size() const { return patterns_.size(); }
    std::size_t vocab_size() const { return vocab_size_; }
    void set_vocab_size(std::size_t n) { vocab_size_ = n; }

    const std::vector<Sequence>& patterns() const { return patterns_; }
    const Sequence& pattern(std::size_t i) const { return patterns_[i]; }
    const MultiplicityDistribution& dist(std::size_t i) const { return dists_[i]; }
    const MultiplicityDistribution& dist(const Sequence& s) const { return dists_[index_of(s)]; }

    bool contains(const Sequence& s) const { return index_.count(s) > 0; }
    std::size_t index_of(const Sequence& s) const;

    /// Appends a pattern; throws if already present.
    std::size_t add(const Sequence& s, MultiplicityDistribution dist);
    void set_dist(std::size_t i, MultiplicityDistribution dist) { dists_[i] = std::move(dist); }

    /// Removes the most recently added pattern (candidate rollback).
    void pop_back();

    /// Removes an arbitrary pattern; later indices shift down by one.
    void remove(const Sequence& s);

    bool operator==(const Model& other) const {
        return patterns_ == other.patterns_ && dists_ == other.dists_ &&
               vocab_size_ == other.vocab_size_;
    }

private:
    std::vector<Sequence> patterns_;
    std::vector<MultiplicityDistribution> dists_;
    std::unordered_map<Sequence, std::size_t, SequenceHash> index_;
    std::size_t vocab_size_ = 0;
};

/// Frobenius norm of the difference between two distribution lists, shorter
/// vectors padded with zeros. Lists must describe the same pattern set.
double dist_change_frobenius(const Model& a, const Model& b);

}  // namespace seqmine
