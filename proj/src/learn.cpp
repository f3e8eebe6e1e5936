#include "seqmine/learn.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "seqmine/match.hpp"
#include "seqmine/parallel.hpp"

namespace seqmine {

void EmConfig::validate() const {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_em_iterations < 1 || structural_iterations < 1 || em_interval < 1 ||
        queue_capacity < 1 || threads < 1)
        throw std::invalid_argument("all EmConfig counts must be >= 1");
}

namespace {

std::vector<std::uint32_t> item_row_counts(const SequenceDatabase& db) {
    std::vector<std::uint32_t> counts;
    std::vector<std::size_t> last_row;
    for (std::size_t i = 0; i < db.rows.size(); ++i) {
        for (Item v : db.rows[i]) {
            if (v >= counts.size()) {
                counts.resize(v + 1, 0);
                last_row.resize(v + 1, SIZE_MAX);
            }
            if (last_row[v] != i) {
                last_row[v] = i;
                ++counts[v];
            }
        }
    }
    return counts;
}

/// Per-row supported-pattern lists, index-aligned with the model. Entries in
/// each row are sorted by model index; patterns are only ever appended or
/// popped from the tail, except for full rebuilds.
struct RowSupport {
    std::vector<std::vector<SupportedPattern>> rows;

    void build(const SequenceDatabase& db, const Model& model, unsigned threads) {
        rows.assign(db.size(), {});
        parallel_for(db.size(), threads, [&](std::size_t i) {
            auto& out = rows[i];
            for (std::size_t p = 0; p < model.size(); ++p) {
                std::uint32_t count = max_disjoint_occurrences(model.pattern(p), db.rows[i]).count;
                if (count > 0) out.push_back(SupportedPattern{p, count});
            }
        });
    }

    /// Match model patterns [first_new, model.size()) against every row.
    void append_patterns(const SequenceDatabase& db, const Model& model, std::size_t first_new,
                         unsigned threads) {
        parallel_for(db.size(), threads, [&](std::size_t i) {
            for (std::size_t p = first_new; p < model.size(); ++p) {
                std::uint32_t count = max_disjoint_occurrences(model.pattern(p), db.rows[i]).count;
                if (count > 0) rows[i].push_back(SupportedPattern{p, count});
            }
        });
    }

    /// Drop entries of patterns with index >= size (trial rollback).
    void pop_to(std::size_t size) {
        for (auto& row : rows) {
            while (!row.empty() && row.back().model_index >= size) row.pop_back();
        }
    }
};

std::vector<Covering> e_step_impl(const SequenceDatabase& db, const Model& model,
                                  const RowSupport& support, unsigned threads) {
    std::vector<Covering> coverings(db.size());
    parallel_for(db.size(), threads, [&](std::size_t i) {
        coverings[i] = greedy_cover(db.rows[i], support.rows[i], model, i);
    });
    return coverings;
}

/// Sorted pattern indices: support descending, lexicographic ascending.
std::vector<std::size_t> support_order(const Model& model, const SequenceDatabase& db,
                                       CandidateQueue& queue) {
    std::vector<std::size_t> order(model.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint32_t> supports(model.size());
    for (std::size_t i = 0; i < model.size(); ++i)
        supports[i] = queue.cached_support(model.pattern(i), db);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (supports[a] != supports[b]) return supports[a] > supports[b];
        return model.pattern(a) < model.pattern(b);
    });
    return order;
}

}  // namespace

Model init_model(const SequenceDatabase& db) {
    if (db.empty()) throw std::invalid_argument("empty database");
    auto counts = item_row_counts(db);
    std::size_t vocab = std::max(db.vocab_size, counts.size());
    Model model(vocab);
    const double n = static_cast<double>(db.size());
    for (Item v = 0; v < counts.size(); ++v) {
        if (counts[v] == 0) continue;
        model.add(Sequence{v}, MultiplicityDistribution::bernoulli(counts[v] / n));
    }
    return model;
}

Model reseed_singletons(Model model, const SequenceDatabase& db) {
    auto counts = item_row_counts(db);
    const double n = static_cast<double>(db.size());
    for (Item v = 0; v < counts.size(); ++v) {
        if (counts[v] == 0) continue;
        Sequence singleton{v};
        if (!model.contains(singleton)) {
            model.add(singleton, MultiplicityDistribution::bernoulli(counts[v] / n));
        } else {
            std::size_t i = model.index_of(singleton);
            if (model.dist(i).at(1) == 0.0)
                model.set_dist(i, MultiplicityDistribution::bernoulli(counts[v] / n));
        }
    }
    return model;
}

std::vector<Covering> e_step(const SequenceDatabase& db, const Model& model, unsigned threads) {
    RowSupport support;
    support.build(db, model, threads);
    return e_step_impl(db, model, support, threads);
}

Model m_step(const std::vector<Covering>& coverings, const Model& model) {
    const std::size_t n = coverings.size();
    std::vector<std::vector<std::uint32_t>> hist(model.size());

    for (const Covering& covering : coverings) {
        for (const auto& [pattern, count] : covering.chosen.entries()) {
            auto& h = hist[model.index_of(pattern)];
            if (h.size() <= count) h.resize(count + 1, 0);
            ++h[count];
        }
    }

    Model out = model;
    for (std::size_t i = 0; i < model.size(); ++i) {
        auto& h = hist[i];
        if (h.size() < 2) h.resize(2, 0);
        std::uint32_t used = std::accumulate(h.begin(), h.end(), 0u);
        h[0] = static_cast<std::uint32_t>(n) - used;
        std::vector<double> probs(h.size());
        for (std::size_t m = 0; m < h.size(); ++m)
            probs[m] = static_cast<double>(h[m]) / static_cast<double>(n);
        out.set_dist(i, MultiplicityDistribution(std::move(probs)));
    }
    return out;
}

double mean_objective(const std::vector<Covering>& coverings, const Model& model) {
    double sum = 0.0;
    for (const Covering& covering : coverings) sum += row_objective(covering.chosen, model);
    return sum / static_cast<double>(coverings.size());
}

namespace {

HardEmResult hard_em_impl(Model model, const SequenceDatabase& db, const EmConfig& cfg,
                          RowSupport& support) {
    HardEmResult res;
    std::vector<Covering> coverings;
    bool reseeded = false;

    for (std::size_t iter = 1; iter <= cfg.max_em_iterations; ++iter) {
        try {
            coverings = e_step_impl(db, model, support, cfg.threads);
        } catch (const CoverageError&) {
            if (reseeded) throw;
            reseeded = true;
            std::size_t before = model.size();
            model = reseed_singletons(std::move(model), db);
            support.append_patterns(db, model, before, cfg.threads);
            coverings = e_step_impl(db, model, support, cfg.threads);
        }
        Model updated = m_step(coverings, model);
        double delta = dist_change_frobenius(model, updated);
        model = std::move(updated);
        res.iterations = iter;
        if (delta <= cfg.tolerance) break;
    }

    // Align the returned coverings and mean with the final distributions.
    res.coverings = e_step_impl(db, model, support, cfg.threads);
    res.mean = mean_objective(res.coverings, model);

    // Prune never-used patterns; singletons of database items stay so every
    // row remains coverable.
    auto item_counts = item_row_counts(db);
    std::vector<Sequence> prune;
    for (std::size_t i = 0; i < model.size(); ++i) {
        const Sequence& pattern = model.pattern(i);
        if (model.dist(i).at(0) != 1.0) continue;
        bool protected_singleton = pattern.size() == 1 && pattern[0] < item_counts.size() &&
                                   item_counts[pattern[0]] > 0;
        if (!protected_singleton) prune.push_back(pattern);
    }
    for (const Sequence& pattern : prune) model.remove(pattern);
    if (!prune.empty()) support.build(db, model, cfg.threads);

    res.pruned = std::move(prune);
    res.model = std::move(model);
    return res;
}

StructuralStepResult structural_step_impl(const Model& model, const SequenceDatabase& db,
                                          CandidateQueue& queue, double current_mean,
                                          unsigned threads, RowSupport& support) {
    StructuralStepResult res;
    res.model = model;
    res.mean = current_mean;
    const std::size_t base_size = model.size();

    for (;;) {
        if (!queue.built()) queue.build(res.model, db);
        auto candidate = queue.pop(res.model);
        if (!candidate) {
            queue.build(res.model, db);
            candidate = queue.pop(res.model);
            if (!candidate) return res;  // exhausted
        }
        ++res.candidates_tried;

        // Forced prior sized by the largest number of disjoint occurrences
        // in any row.
        std::vector<std::uint32_t> per_row(db.size(), 0);
        parallel_for(db.size(), threads, [&](std::size_t i) {
            per_row[i] = max_disjoint_occurrences(*candidate, db.rows[i]).count;
        });
        std::uint32_t max_mult = *std::max_element(per_row.begin(), per_row.end());

        Model trial = res.model;
        trial.add(*candidate, MultiplicityDistribution::forced(max_mult));
        support.append_patterns(db, trial, trial.size() - 1, threads);

        std::vector<Covering> coverings;
        try {
            coverings = e_step_impl(db, trial, support, threads);
        } catch (const CoverageError&) {
            std::size_t before = trial.size();
            trial = reseed_singletons(std::move(trial), db);
            support.append_patterns(db, trial, before, threads);
            coverings = e_step_impl(db, trial, support, threads);
        }

        Model updated = m_step(coverings, trial);
        std::vector<Covering> rescored = e_step_impl(db, updated, support, threads);
        double mean = mean_objective(rescored, updated);

        if (mean > current_mean) {
            res.model = std::move(updated);
            res.coverings = std::move(rescored);
            res.mean = mean;
            res.accepted = true;
            res.accepted_pattern = *candidate;
            return res;
        }

        queue.reject(*candidate);
        support.pop_to(base_size);
    }
}

}  // namespace

HardEmResult hard_em(Model model, const SequenceDatabase& db, const EmConfig& cfg) {
    cfg.validate();
    RowSupport support;
    support.build(db, model, cfg.threads);
    return hard_em_impl(std::move(model), db, cfg, support);
}

StructuralStepResult structural_em_step(const Model& model, const SequenceDatabase& db,
                                        CandidateQueue& queue, double current_mean,
                                        unsigned threads) {
    RowSupport support;
    support.build(db, model, threads);
    return structural_step_impl(model, db, queue, current_mean, threads, support);
}

void CandidateQueue::build(const Model& model, const SequenceDatabase& db) {
    entries_.clear();
    queued_.clear();
    built_ = true;

    auto order = support_order(model, db, *this);
    for (std::size_t i : order) {
        if (entries_.size() >= capacity_) break;
        for (std::size_t j : order) {
            if (entries_.size() >= capacity_) break;
            push(concat(model.pattern(i), model.pattern(j)), model.pattern(i), model.pattern(j),
                 model, db);
        }
    }
}

void CandidateQueue::push_extensions(const Sequence& accepted, const Model& model,
                                     const SequenceDatabase& db) {
    if (!built_) return;
    auto order = support_order(model, db, *this);
    for (std::size_t i : order) {
        const Sequence& other = model.pattern(i);
        push(concat(other, accepted), other, accepted, model, db);
        push(concat(accepted, other), accepted, other, model, db);
    }
}

void CandidateQueue::push(Sequence candidate, const Sequence& left, const Sequence& right,
                          const Model& model, const SequenceDatabase& db) {
    if (model.contains(candidate) || rejected_.count(candidate) || queued_.count(candidate))
        return;

    std::uint32_t supp;
    auto cached = support_cache_.find(candidate);
    if (cached != support_cache_.end()) {
        supp = cached->second;
    } else {
        // A concatenation is only supported where both halves are.
        const auto& rows_left = rows_of(left, db);
        const auto& rows_right = rows_of(right, db);
        supp = 0;
        std::size_t a = 0, b = 0;
        while (a < rows_left.size() && b < rows_right.size()) {
            if (rows_left[a] < rows_right[b]) {
                ++a;
            } else if (rows_left[a] > rows_right[b]) {
                ++b;
            } else {
                if (is_subsequence(candidate, db.rows[rows_left[a]])) ++supp;
                ++a;
                ++b;
            }
        }
        support_cache_[candidate] = supp;
    }

    if (entries_.size() >= capacity_) {
        auto worst = std::prev(entries_.end());
        if (supp <= worst->support) return;
        queued_.erase(worst->seq);
        entries_.erase(worst);
    }
    queued_.insert(candidate);
    entries_.insert(Entry{supp, counter_++, std::move(candidate)});
}

std::optional<Sequence> CandidateQueue::pop(const Model& model) {
    while (!entries_.empty()) {
        Entry top = *entries_.begin();
        entries_.erase(entries_.begin());
        queued_.erase(top.seq);
        if (rejected_.count(top.seq) || model.contains(top.seq)) continue;
        return top.seq;
    }
    return std::nullopt;
}

const std::vector<std::uint32_t>& CandidateQueue::rows_of(const Sequence& s,
                                                          const SequenceDatabase& db) {
    auto it = row_cache_.find(s);
    if (it == row_cache_.end()) it = row_cache_.emplace(s, supporting_rows(s, db)).first;
    return it->second;
}

std::uint32_t CandidateQueue::cached_support(const Sequence& s, const SequenceDatabase& db) {
    auto it = support_cache_.find(s);
    if (it != support_cache_.end()) return it->second;
    std::uint32_t supp = support(s, db);
    support_cache_[s] = supp;
    return supp;
}

MiningResult mine(const SequenceDatabase& db, const EmConfig& cfg, std::uint64_t seed,
                  const ProgressFn& progress) {
    cfg.validate();
    (void)seed;  // mining is deterministic; the seed is interface parity

    MiningResult res;
    Model model = init_model(db);
    RowSupport support;
    support.build(db, model, cfg.threads);

    // One hard-EM before the structural loop so the baseline distributions
    // have full-length histograms (init_model emits length-2 vectors).
    CandidateQueue queue(cfg.queue_capacity);
    auto em = hard_em_impl(std::move(model), db, cfg, support);
    for (const Sequence& p : em.pruned) queue.reject(p);
    model = std::move(em.model);
    std::vector<Covering> coverings = std::move(em.coverings);
    double mean = em.mean;

    auto report = [&](std::size_t iter, const StructuralStepResult& step) {
        if (!progress) return;
        MiningProgress p;
        p.iteration = iter;
        p.candidates_tried = step.candidates_tried;
        p.accepted = step.accepted;
        p.mean = mean;
        p.pattern_count = model.size();
        p.nonsingleton_count = 0;
        for (const auto& pat : model.patterns())
            if (pat.size() > 1) ++p.nonsingleton_count;
        progress(p);
    };

    std::size_t since_em = 0;
    for (std::size_t iter = 1; iter <= cfg.structural_iterations; ++iter) {
        res.iterations_run = iter;
        auto step = structural_step_impl(model, db, queue, mean, cfg.threads, support);
        res.candidates_evaluated += step.candidates_tried;
        if (!step.accepted) {
            report(iter, step);
            break;
        }
        ++res.candidates_accepted;
        model = std::move(step.model);
        coverings = std::move(step.coverings);
        mean = step.mean;
        queue.push_extensions(step.accepted_pattern, model, db);

        if (++since_em >= cfg.em_interval) {
            since_em = 0;
            auto tuned = hard_em_impl(std::move(model), db, cfg, support);
            for (const Sequence& p : tuned.pruned) queue.reject(p);
            model = std::move(tuned.model);
            coverings = std::move(tuned.coverings);
            mean = tuned.mean;
        }
        report(iter, step);
    }

    auto final_em = hard_em_impl(std::move(model), db, cfg, support);
    res.model = std::move(final_em.model);
    res.coverings = std::move(final_em.coverings);
    res.mean = final_em.mean;
    return res;
}

}  // namespace seqmine
