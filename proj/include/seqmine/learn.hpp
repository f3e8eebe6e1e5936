#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "seqmine/cover.hpp"
#include "seqmine/model.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

struct EmConfig {
    double tolerance = 1e-5;             // Frobenius threshold on the distribution change
    std::size_t max_em_iterations = 100;
    std::size_t structural_iterations = 1000;
    std::size_t em_interval = 1;         // accepted candidates between hard-EM runs
    std::size_t queue_capacity = 100000;
    unsigned threads = 1;

    void validate() const;
};

/// Singleton model: one pattern per distinct database item, inclusion
/// probability equal to its relative row frequency.
Model init_model(const SequenceDatabase& db);

/// Re-inserts (or resets to relative frequency) the singleton of every
/// database item whose singleton is absent or has zero inclusion probability.
Model reseed_singletons(Model model, const SequenceDatabase& db);

/// One covering per row via greedy_cover, in row order regardless of worker
/// count. Coverage failures carry the row index.
std::vector<Covering> e_step(const SequenceDatabase& db, const Model& model, unsigned threads = 1);

/// Empirical multiplicity histograms: pi_S[m] = fraction of rows using S
/// exactly m times. Histogram length is 1 + max observed multiplicity, never
/// shorter than 2.
Model m_step(const std::vector<Covering>& coverings, const Model& model);

/// Mean over rows of the per-row log-probability (row_objective), summed in
/// row order.
double mean_objective(const std::vector<Covering>& coverings, const Model& model);

struct HardEmResult {
    Model model;
    std::vector<Covering> coverings;
    double mean = 0.0;
    std::size_t iterations = 0;
    std::vector<Sequence> pruned;  // never-used non-singletons removed at the end
};

/// Alternates e_step/m_step until the Frobenius norm of the distribution
/// change drops to cfg.tolerance or cfg.max_em_iterations is reached, then
/// prunes never-used patterns (singletons of database items are kept so
/// every row stays coverable). On a coverage failure the model is reseeded
/// and the step retried once; a second failure propagates.
HardEmResult hard_em(Model model, const SequenceDatabase& db, const EmConfig& cfg);

/// Support-ordered queue of pairwise pattern concatenations, with the
/// support cache and the set of rejected candidates. Capacity is enforced by
/// evicting the lowest-support entry.
class CandidateQueue {
public:
    explicit CandidateQueue(std::size_t capacity) : capacity_(capacity) {}

    bool built() const { return built_; }
    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }

    /// Rebuilds from scratch: model patterns sorted by decreasing support,
    /// ordered pairs enumerated highest-ranked first (row-major), their
    /// concatenations pushed until the queue is full. Rejected candidates
    /// and the support cache survive rebuilds.
    void build(const Model& model, const SequenceDatabase& db);

    /// Pushes the ordered pairs of a newly accepted pattern with every model
    /// pattern, keeping the queue aligned with the grown pattern set without
    /// a full rebuild.
    void push_extensions(const Sequence& accepted, const Model& model,
                         const SequenceDatabase& db);

    /// Highest-support candidate that is neither rejected nor in the model;
    /// nullopt when the queue is exhausted.
    std::optional<Sequence> pop(const Model& model);

    void reject(const Sequence& candidate) { rejected_.insert(candidate); }
    bool is_rejected(const Sequence& candidate) const { return rejected_.count(candidate) > 0; }
    std::size_t rejected_count() const { return rejected_.size(); }

    /// Cached support lookup (the sigma map).
    std::uint32_t cached_support(const Sequence& s, const SequenceDatabase& db);

private:
    struct Entry {
        std::uint32_t support;
        std::uint64_t order;
        Sequence seq;

        bool operator<(const Entry& other) const {
            if (support != other.support) return support > other.support;
            return order < other.order;
        }
    };

    void push(Sequence candidate, const Sequence& left, const Sequence& right, const Model& model,
              const SequenceDatabase& db);
    const std::vector<std::uint32_t>& rows_of(const Sequence& s, const SequenceDatabase& db);

    std::set<Entry> entries_;
    std::unordered_set<Sequence, SequenceHash> queued_;
    std::unordered_set<Sequence, SequenceHash> rejected_;
    std::unordered_map<Sequence, std::uint32_t, SequenceHash> support_cache_;
    std::unordered_map<Sequence, std::vector<std::uint32_t>, SequenceHash> row_cache_;
    std::size_t capacity_;
    std::uint64_t counter_ = 0;
    bool built_ = false;
};

struct StructuralStepResult {
    Model model;
    std::vector<Covering> coverings;
    bool accepted = false;
    double mean = 0.0;
    std::size_t candidates_tried = 0;
    Sequence accepted_pattern;
};

/// One structural-EM iteration: pulls candidates until one improves the mean
/// objective. Each candidate is added with the forced prior (0,1,...,1),
/// usage is inferred by one E-step, the M-step re-estimates all
/// distributions, and the rows are re-scored under the updated model. A
/// candidate is kept iff the re-scored mean strictly exceeds current_mean;
/// otherwise it joins the rejected set and the next candidate is pulled.
/// accepted=false means the queue was exhausted (after one rebuild attempt).
StructuralStepResult structural_em_step(const Model& model, const SequenceDatabase& db,
                                        CandidateQueue& queue, double current_mean,
                                        unsigned threads = 1);

struct MiningProgress {
    std::size_t iteration = 0;
    std::size_t candidates_tried = 0;
    bool accepted = false;
    double mean = 0.0;
    std::size_t pattern_count = 0;
    std::size_t nonsingleton_count = 0;
};
using ProgressFn = std::function<void(const MiningProgress&)>;

struct MiningResult {
    Model model;
    std::vector<Covering> coverings;
    double mean = 0.0;
    std::size_t iterations_run = 0;
    std::size_t candidates_evaluated = 0;
    std::size_t candidates_accepted = 0;
};

/// The full mining loop: singleton initialization, one hard-EM to settle the
/// initial distributions, then structural-EM iterations with hard-EM runs
/// after every cfg.em_interval accepted candidates and a final hard-EM. The
/// seed is accepted for interface stability; mining is deterministic.
MiningResult mine(const SequenceDatabase& db, const EmConfig& cfg, std::uint64_t seed = 0,
                  const ProgressFn& progress = nullptr);

}  // namespace seqmine
