#include "seqmine/generate.hpp"

#include <algorithm>
#include <stdexcept>

#include "seqmine/parallel.hpp"

namespace seqmine {

PatternMultiset sample_multiplicities(const Model& model, RandomSource& rng) {
    PatternMultiset out;
    for (std::size_t i = 0; i < model.size(); ++i) {
        const auto& probs = model.dist(i).probs();
        double u = rng.next_unit();
        std::size_t m = probs.size() - 1;
        double cum = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            cum += probs[k];
            if (u < cum) {
                m = k;
                break;
            }
        }
        if (m > 0) out.add(model.pattern(i), static_cast<std::uint32_t>(m));
    }
    return out;
}

namespace {

/// Uniform non-decreasing gap positions g_1 <= ... <= g_m in [0, length]:
/// a uniform m-subset of {0,...,length+m-1} (Floyd's method) shifted back.
std::vector<std::size_t> sample_gaps(std::size_t length, std::size_t m, RandomSource& rng) {
    std::vector<std::size_t> picked;
    picked.reserve(m);
    for (std::size_t j = length; j < length + m; ++j) {
        std::size_t t = rng.next_below(j + 1);
        if (std::find(picked.begin(), picked.end(), t) != picked.end())
            picked.push_back(j);
        else
            picked.push_back(t);
    }
    std::sort(picked.begin(), picked.end());
    for (std::size_t i = 0; i < m; ++i) picked[i] -= i;
    return picked;
}

Sequence splice(const Sequence& base, const Sequence& pattern, const std::vector<std::size_t>& gaps) {
    Sequence out;
    out.reserve(base.size() + pattern.size());
    std::size_t k = 0;
    for (std::size_t pos = 0; pos <= base.size(); ++pos) {
        while (k < pattern.size() && gaps[k] == pos) out.push_back(pattern[k++]);
        if (pos < base.size()) out.push_back(base[pos]);
    }
    return out;
}

void enumerate_rec(const std::vector<Sequence>& sources, std::vector<std::size_t>& heads,
                   Sequence& prefix, std::size_t remaining, std::set<Sequence>& out) {
    if (remaining == 0) {
        out.insert(prefix);
        return;
    }
    for (std::size_t s = 0; s < sources.size(); ++s) {
        if (heads[s] == sources[s].size()) continue;
        // Sources with identical remaining suffixes are interchangeable;
        // branch only on the first.
        bool duplicate = false;
        for (std::size_t t = 0; t < s && !duplicate; ++t) {
            duplicate = sources[t].size() - heads[t] == sources[s].size() - heads[s] &&
                        std::equal(sources[t].begin() + static_cast<std::ptrdiff_t>(heads[t]),
                                   sources[t].end(),
                                   sources[s].begin() + static_cast<std::ptrdiff_t>(heads[s]));
        }
        if (duplicate) continue;
        prefix.push_back(sources[s][heads[s]]);
        ++heads[s];
        enumerate_rec(sources, heads, prefix, remaining - 1, out);
        --heads[s];
        prefix.pop_back();
    }
}

}  // namespace

Sequence interleave_sample(const PatternMultiset& multiset, RandomSource& rng) {
    if (multiset.empty()) throw std::invalid_argument("empty multiset");
    Sequence out;
    for (const auto& [pattern, count] : multiset.sorted_entries()) {
        for (std::uint32_t c = 0; c < count; ++c) {
            auto gaps = sample_gaps(out.size(), pattern.size(), rng);
            out = splice(out, pattern, gaps);
        }
    }
    return out;
}

std::set<Sequence> enumerate_interleavings(const PatternMultiset& multiset) {
    std::size_t total = multiset.total_items();
    if (total > 12) throw std::invalid_argument("interleaving enumeration limited to 12 items");

    std::vector<Sequence> sources;
    for (const auto& [pattern, count] : multiset.sorted_entries()) {
        for (std::uint32_t c = 0; c < count; ++c) sources.push_back(pattern);
    }
    std::set<Sequence> out;
    std::vector<std::size_t> heads(sources.size(), 0);
    Sequence prefix;
    prefix.reserve(total);
    enumerate_rec(sources, heads, prefix, total, out);
    return out;
}

Sequence uniform_interleaving(const PatternMultiset& multiset, RandomSource& rng) {
    auto all = enumerate_interleavings(multiset);
    std::size_t pick = rng.next_below(all.size());
    auto it = all.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick));
    return *it;
}

SequenceDatabase sample_database(const Model& model, std::size_t n_rows, RandomSource& rng,
                                 bool allow_empty, unsigned threads) {
    if (n_rows == 0 && !allow_empty) throw std::invalid_argument("cannot sample zero rows");

    bool inclusion_possible = false;
    for (std::size_t i = 0; i < model.size(); ++i)
        inclusion_possible |= model.dist(i).at(0) < 1.0;
    if (!inclusion_possible && n_rows > 0)
        throw std::invalid_argument("degenerate model: every pattern has inclusion probability 0");

    SequenceDatabase db;
    db.vocab_size = model.vocab_size();
    db.rows.resize(n_rows);
    RandomSource base(rng.next());  // advance the caller's stream per call
    parallel_for(n_rows, threads, [&](std::size_t i) {
        RandomSource row_rng = base.fork(i);
        for (;;) {
            PatternMultiset ms = sample_multiplicities(model, row_rng);
            if (ms.empty()) continue;  // no empty rows; redraw
            db.rows[i] = interleave_sample(ms, row_rng);
            break;
        }
    });
    return db;
}

ParallelProcessData parallel_process_db(std::size_t n_processes, std::size_t process_items,
                                        std::size_t total_length, std::size_t row_length,
                                        RandomSource& rng) {
    if (n_processes == 0 || process_items == 0) throw std::invalid_argument("empty process set");
    if (row_length == 0 || total_length % row_length != 0)
        throw std::invalid_argument("row length must divide total length");

    ParallelProcessData out;
    out.db.vocab_size = n_processes * process_items;

    std::vector<std::size_t> next(n_processes, 0);
    Sequence stream;
    stream.reserve(total_length);
    for (std::size_t step = 0; step < total_length; ++step) {
        std::size_t p = rng.next_below(n_processes);
        stream.push_back(static_cast<Item>(p * process_items + next[p]));
        next[p] = (next[p] + 1) % process_items;
    }

    out.db.rows.reserve(total_length / row_length);
    for (std::size_t start = 0; start < total_length; start += row_length) {
        out.db.rows.emplace_back(stream.begin() + static_cast<std::ptrdiff_t>(start),
                                 stream.begin() + static_cast<std::ptrdiff_t>(start + row_length));
    }

    // Ground truth: all contiguous windows of each process's cycle, with
    // wraparound, up to one full cycle long.
    for (std::size_t p = 0; p < n_processes; ++p) {
        for (std::size_t len = 1; len <= process_items; ++len) {
            for (std::size_t start = 0; start < process_items; ++start) {
                Sequence window;
                window.reserve(len);
                for (std::size_t k = 0; k < len; ++k)
                    window.push_back(
                        static_cast<Item>(p * process_items + (start + k) % process_items));
                out.generating.insert(std::move(window));
            }
        }
    }
    return out;
}

}  // namespace seqmine
