#include "seqmine/cover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seqmine/match.hpp"
#include "seqmine/rng.hpp"

namespace seqmine {

InfeasibleMultiplicityError::InfeasibleMultiplicityError(const Sequence& pattern,
                                                         std::uint32_t multiplicity,
                                                         std::size_t dist_size)
    : std::domain_error([&] {
          std::ostringstream msg;
          msg << "multiplicity " << multiplicity << " has no distribution entry (length "
              << dist_size << ") for pattern of length " << pattern.size();
          return msg.str();
      }()) {}

double permutation_penalty(std::size_t total_items) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= total_items; ++j) sum += std::log(static_cast<double>(j));
    return -sum;
}

double covering_objective(const PatternMultiset& chosen, const Model& model) {
    double value = 0.0;
    for (const auto& [pattern, count] : chosen.sorted_entries()) {
        const auto& dist = model.dist(pattern);
        if (count >= dist.size()) throw InfeasibleMultiplicityError(pattern, count, dist.size());
        value += dist.log_at(count);
    }
    return value + permutation_penalty(chosen.total_items());
}

namespace {

/// covering_objective with unrecorded multiplicities read as probability 0.
double covering_objective_sentinel(const PatternMultiset& chosen, const Model& model) {
    double value = 0.0;
    for (const auto& [pattern, count] : chosen.sorted_entries())
        value += model.dist(pattern).log_at(count);
    return value + permutation_penalty(chosen.total_items());
}

/// Penalty increment when the covered-item count grows from `covered` by `len`.
double penalty_increment(std::size_t covered, std::size_t len) {
    double sum = 0.0;
    for (std::size_t j = covered + 1; j <= covered + len; ++j)
        sum += std::log(static_cast<double>(j));
    return sum;
}

}  // namespace

double row_objective(const PatternMultiset& chosen, const Model& model) {
    double value = covering_objective_sentinel(chosen, model);
    for (std::size_t i = 0; i < model.size(); ++i) {
        if (chosen.multiplicity(model.pattern(i)) == 0) value += model.dist(i).log_at(0);
    }
    return value;
}

Covering greedy_cover(const Sequence& row, const std::vector<SupportedPattern>& supported,
                      const Model& model, std::size_t row_index) {
    Covering out;
    const std::size_t n = row.size();
    std::vector<char> available(n, 1);
    std::size_t covered = 0;
    std::vector<std::uint32_t> used(supported.size(), 0);

    while (covered < n) {
        std::size_t best = supported.size();
        double best_profit = 0.0;
        std::vector<std::uint32_t> best_embedding;

        for (std::size_t k = 0; k < supported.size(); ++k) {
            const auto& cand = supported[k];
            if (used[k] >= cand.max_multiplicity) continue;
            const Sequence& pattern = model.pattern(cand.model_index);
            auto embedding = leftmost_embedding(pattern, row, available);
            if (!embedding) continue;

            const auto& dist = model.dist(cand.model_index);
            double gain = dist.log_at(used[k] + 1) - dist.log_at(used[k]) -
                          penalty_increment(covered, pattern.size());
            double profit = gain / static_cast<double>(pattern.size());

            bool better = false;
            if (best == supported.size() || profit > best_profit) {
                better = true;
            } else if (profit == best_profit) {
                const Sequence& best_pattern = model.pattern(supported[best].model_index);
                if (pattern.size() > best_pattern.size() ||
                    (pattern.size() == best_pattern.size() && pattern < best_pattern)) {
                    better = true;
                }
            }
            if (better) {
                best = k;
                best_profit = profit;
                best_embedding = std::move(*embedding);
            }
        }

        if (best == supported.size()) {
            std::vector<Item> missing;
            for (std::size_t i = 0; i < n; ++i) {
                if (available[i] && std::find(missing.begin(), missing.end(), row[i]) == missing.end())
                    missing.push_back(row[i]);
            }
            throw CoverageError(row_index, std::move(missing));
        }

        const Sequence& pattern = model.pattern(supported[best].model_index);
        for (std::uint32_t p : best_embedding) available[p] = 0;
        covered += pattern.size();
        ++used[best];
        out.chosen.add(pattern);
        out.assignments.push_back(Occurrence{pattern, std::move(best_embedding)});
    }

    out.objective_value = covering_objective_sentinel(out.chosen, model);
    return out;
}

Covering greedy_cover(const Sequence& row, const PatternMultiset& supported, const Model& model,
                      std::size_t row_index) {
    std::vector<SupportedPattern> cands;
    cands.reserve(supported.distinct_count());
    for (const auto& [pattern, cap] : supported.sorted_entries())
        cands.push_back(SupportedPattern{model.index_of(pattern), cap});
    return greedy_cover(row, cands, model, row_index);
}

bool check_submodularity(const Model& model, std::size_t trials, std::uint64_t seed) {
    if (model.size() == 0) return true;
    RandomSource rng(seed);

    for (std::size_t t = 0; t < trials; ++t) {
        // Probe pattern plus a nested pair C subset-of D that agree on the
        // probe's multiplicity, all multiplicities kept one step below each
        // distribution's last entry so the +1 stays in range.
        std::size_t probe = rng.next_below(model.size());
        PatternMultiset small, large;
        std::uint32_t probe_count = 0;

        for (std::size_t i = 0; i < model.size(); ++i) {
            auto headroom = static_cast<std::uint32_t>(model.dist(i).size() - 1);
            std::uint32_t cap = i == probe ? headroom - std::min(headroom, 1u) : headroom;
            if (cap == 0) continue;
            auto in_large = static_cast<std::uint32_t>(rng.next_below(cap + 1));
            auto in_small = static_cast<std::uint32_t>(rng.next_below(in_large + 1));
            if (i == probe) {
                in_small = in_large;  // equal multiplicity required
                probe_count = in_large;
            }
            large.add(model.pattern(i), in_large);
            small.add(model.pattern(i), in_small);
        }
        if (probe_count + 1 >= model.dist(probe).size()) continue;

        PatternMultiset small_plus = small;
        PatternMultiset large_plus = large;
        small_plus.add(model.pattern(probe));
        large_plus.add(model.pattern(probe));

        double gain_small = covering_objective(small_plus, model) - covering_objective(small, model);
        double gain_large = covering_objective(large_plus, model) - covering_objective(large, model);
        if (gain_small < gain_large - 1e-9) return false;
    }
    return true;
}

}  // namespace seqmine
