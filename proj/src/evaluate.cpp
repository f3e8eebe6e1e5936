#include "seqmine/evaluate.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "seqmine/match.hpp"
#include "seqmine/parallel.hpp"

namespace seqmine {

double interestingness(const Sequence& pattern, const std::vector<Covering>& coverings,
                       const SequenceDatabase& db) {
    std::uint32_t supp = 0, explained = 0;
    for (std::size_t i = 0; i < db.rows.size(); ++i) {
        if (!is_subsequence(pattern, db.rows[i])) continue;
        ++supp;
        if (i < coverings.size() && coverings[i].uses(pattern)) ++explained;
    }
    if (supp == 0) throw std::domain_error("interestingness undefined: pattern has no support");
    return static_cast<double>(explained) / static_cast<double>(supp);
}

std::vector<RankedPattern> rank_patterns(const Model& model, const std::vector<Covering>& coverings,
                                         const SequenceDatabase& db, unsigned threads) {
    std::vector<RankedPattern> out(model.size());
    parallel_for(model.size(), threads, [&](std::size_t p) {
        RankedPattern& r = out[p];
        r.pattern = model.pattern(p);
        r.inclusion_probability = 1.0 - model.dist(p).at(0);
        for (std::size_t i = 0; i < db.rows.size(); ++i) {
            if (!is_subsequence(r.pattern, db.rows[i])) continue;
            ++r.support;
            if (i < coverings.size() && coverings[i].uses(r.pattern)) ++r.explained_rows;
        }
        r.interestingness =
            r.support == 0 ? 0.0
                           : static_cast<double>(r.explained_rows) / static_cast<double>(r.support);
    });

    std::sort(out.begin(), out.end(), [](const RankedPattern& a, const RankedPattern& b) {
        if (a.interestingness != b.interestingness) return a.interestingness > b.interestingness;
        if (a.inclusion_probability != b.inclusion_probability)
            return a.inclusion_probability > b.inclusion_probability;
        if (a.support != b.support) return a.support > b.support;
        return a.pattern < b.pattern;
    });
    return out;
}

std::vector<RankedPattern> top_nonsingleton(const std::vector<RankedPattern>& ranked,
                                            std::size_t k) {
    std::vector<RankedPattern> out;
    for (const auto& r : ranked) {
        if (out.size() == k) break;
        if (!r.is_singleton()) out.push_back(r);
    }
    return out;
}

PrecisionRecall precision_recall_at_k(const std::vector<Sequence>& mined,
                                      const std::set<Sequence>& generating, std::size_t k) {
    if (generating.empty()) throw std::invalid_argument("empty generating set");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k && i < mined.size(); ++i) {
        if (generating.count(mined[i])) ++hits;
    }
    return PrecisionRecall{static_cast<double>(hits) / static_cast<double>(k),
                           static_cast<double>(hits) / static_cast<double>(generating.size())};
}

std::vector<PrecisionRecall> precision_recall_curve(const std::vector<Sequence>& mined,
                                                    const std::set<Sequence>& generating) {
    std::vector<PrecisionRecall> curve;
    curve.reserve(mined.size());
    for (std::size_t k = 1; k <= mined.size(); ++k)
        curve.push_back(precision_recall_at_k(mined, generating, k));
    return curve;
}

std::vector<double> interpolated_precision_11pt(const std::vector<PrecisionRecall>& curve) {
    if (curve.empty()) throw std::invalid_argument("empty precision-recall curve");
    std::vector<double> out(11, 0.0);
    for (std::size_t level = 0; level <= 10; ++level) {
        double recall_floor = static_cast<double>(level) / 10.0;
        double best = 0.0;
        for (const auto& point : curve) {
            if (point.recall >= recall_floor - 1e-12) best = std::max(best, point.precision);
        }
        out[level] = best;
    }
    return out;
}

std::size_t edit_distance(const Sequence& a, const Sequence& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

RedundancyMetrics redundancy_metrics(const std::vector<Sequence>& patterns, std::size_t top_k) {
    std::vector<Sequence> set;
    for (const auto& p : patterns) {
        if (set.size() == top_k) break;
        if (p.size() > 1) set.push_back(p);
    }
    if (set.size() < 2)
        throw std::invalid_argument("redundancy metrics need at least 2 non-singleton patterns");

    RedundancyMetrics out;
    double isd_sum = 0.0, cs_sum = 0.0;
    std::unordered_set<Item> items;
    for (std::size_t i = 0; i < set.size(); ++i) {
        std::size_t min_dist = SIZE_MAX;
        std::size_t containing = 0;
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (i == j) continue;
            min_dist = std::min(min_dist, edit_distance(set[i], set[j]));
            if (is_subsequence(set[i], set[j])) ++containing;
        }
        isd_sum += static_cast<double>(min_dist);
        cs_sum += static_cast<double>(containing);
        items.insert(set[i].begin(), set[i].end());
    }
    out.isd = isd_sum / static_cast<double>(set.size());
    out.cs = cs_sum / static_cast<double>(set.size());
    out.unique_items = items.size();
    return out;
}

std::vector<std::vector<std::uint8_t>> feature_matrix(const SequenceDatabase& db,
                                                      const std::vector<Sequence>& patterns,
                                                      std::size_t k, unsigned threads) {
    if (k > patterns.size()) throw std::invalid_argument("k exceeds pattern count");
    std::vector<std::vector<std::uint8_t>> matrix(db.rows.size());
    parallel_for(db.rows.size(), threads, [&](std::size_t i) {
        matrix[i].resize(k);
        for (std::size_t j = 0; j < k; ++j)
            matrix[i][j] = is_subsequence(patterns[j], db.rows[i]) ? 1 : 0;
    });
    return matrix;
}

}  // namespace seqmine
