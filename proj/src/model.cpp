#include "seqmine/model.hpp"

#include <cmath>

namespace seqmine {

double safe_log(double p) {
    if (p <= 0.0) return kLogZero;
    return std::log(p);
}

MultiplicityDistribution MultiplicityDistribution::forced(std::uint32_t max_multiplicity) {
    std::vector<double> probs(static_cast<std::size_t>(max_multiplicity) + 1, 1.0);
    probs[0] = 0.0;
    if (probs.size() < 2) probs.push_back(1.0);
    return MultiplicityDistribution(std::move(probs));
}

void MultiplicityDistribution::validate() const {
    if (probs_.size() < 2) throw std::invalid_argument("multiplicity distribution shorter than 2");
    double sum = 0.0;
    for (double p : probs_) {
        if (p < 0.0 || p > 1.0 + 1e-12)
            throw std::invalid_argument("multiplicity probability outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("multiplicity probabilities do not sum to 1");
}

std::size_t Model::index_of(const Sequence& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw std::out_of_range("pattern not in model");
    return it->second;
}

std::size_t Model::add(const Sequence& s, MultiplicityDistribution dist) {
    if (s.empty()) throw std::invalid_argument("empty pattern");
    if (contains(s)) throw std::invalid_argument("pattern already in model");
    patterns_.push_back(s);
    dists_.push_back(std::move(dist));
    index_[s] = patterns_.size() - 1;
    return patterns_.size() - 1;
}

void Model::pop_back() {
    if (patterns_.empty()) return;
    index_.erase(patterns_.back());
    patterns_.pop_back();
    dists_.pop_back();
}

void Model::remove(const Sequence& s) {
    std::size_t i = index_of(s);
    index_.erase(s);
    patterns_.erase(patterns_.begin() + static_cast<std::ptrdiff_t>(i));
    dists_.erase(dists_.begin() + static_cast<std::ptrdiff_t>(i));
    for (auto& [key, idx] : index_) {
        if (idx > i) --idx;
    }
}

double dist_change_frobenius(const Model& a, const Model& b) {
    if (a.size() != b.size()) throw std::invalid_argument("pattern sets differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& pa = a.dist(i);
        const auto& pb = b.dist(i);
        std::size_t n = std::max(pa.size(), pb.size());
        for (std::size_t m = 0; m < n; ++m) {
            double d = pa.at(m) - pb.at(m);
            sum += d * d;
        }
    }
    return std::sqrt(sum);
}

}  // namespace seqmine
