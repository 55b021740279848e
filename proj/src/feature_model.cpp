#include "spltest/feature_model.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace spltest {

FeatureModel::FeatureModel(std::vector<std::string> features,
                           std::vector<Clause> clauses)
    : features_(std::move(features)), clauses_(std::move(clauses)) {
    const int n = feature_count();
    std::unordered_set<std::string> seen;
    seen.reserve(features_.size());
    for (const auto& name : features_) {
        if (name.empty())
            throw std::invalid_argument("feature name must not be empty");
        if (!seen.insert(name).second)
            throw std::invalid_argument("duplicate feature name: " + name);
    }
    for (const auto& clause : clauses_) {
        if (clause.empty())
            throw std::invalid_argument("empty clause");
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > n)
                throw std::invalid_argument("literal out of range: " +
                                            std::to_string(lit));
        }
        Clause sorted = clause;
        std::sort(sorted.begin(), sorted.end(),
                  [](int a, int b) { return std::abs(a) < std::abs(b); });
        for (size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i] == -sorted[i - 1])
                throw std::invalid_argument(
                    "tautological clause (contains both +" +
                    std::to_string(std::abs(sorted[i])) + " and -" +
                    std::to_string(std::abs(sorted[i])) + ")");
        }
    }
}

Product::Product(const std::vector<bool>& signs)
    : n_(static_cast<int>(signs.size())), bits_((signs.size() + 63) / 64, 0) {
    for (size_t i = 0; i < signs.size(); ++i) {
        if (signs[i])
            bits_[i >> 6] |= uint64_t{1} << (i & 63);
    }
}

int Product::agreement(const Product& other) const {
    if (n_ != other.n_)
        throw std::invalid_argument("products over different models");
    int disagree = 0;
    for (size_t w = 0; w < bits_.size(); ++w)
        disagree += std::popcount(bits_[w] ^ other.bits_[w]);
    return n_ - disagree;
}

Product Product::complement() const {
    Product out;
    out.n_ = n_;
    out.bits_.resize(bits_.size());
    for (size_t w = 0; w < bits_.size(); ++w)
        out.bits_[w] = ~bits_[w];
    if (n_ % 64 != 0 && !out.bits_.empty())
        out.bits_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
    return out;
}

size_t Product::hash() const {
    uint64_t h = 0xcbf29ce484222325ull ^ static_cast<uint64_t>(n_);
    for (uint64_t w : bits_) {
        h ^= w;
        h *= 0x100000001b3ull;
    }
    return static_cast<size_t>(h);
}

TSet TSet::canonical(std::vector<int> literals, int feature_count) {
    const int t = static_cast<int>(literals.size());
    if (t < 2)
        throw std::invalid_argument("t-set strength must be at least 2");
    if (t > feature_count)
        throw std::invalid_argument("t-set strength exceeds feature count");
    for (int lit : literals) {
        if (lit == 0 || std::abs(lit) > feature_count)
            throw std::invalid_argument("t-set literal out of range: " +
                                        std::to_string(lit));
    }
    std::sort(literals.begin(), literals.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b); });
    for (int i = 1; i < t; ++i) {
        if (std::abs(literals[i]) == std::abs(literals[i - 1]))
            throw std::invalid_argument("t-set names a feature twice");
    }
    return TSet{std::move(literals)};
}

bool covers(const Product& p, const TSet& ts) {
    for (int lit : ts.literals) {
        if (p.selected(std::abs(lit)) != (lit > 0))
            return false;
    }
    return true;
}

bool is_valid_product(const FeatureModel& fm, const Product& p) {
    if (p.size() != fm.feature_count())
        throw std::invalid_argument("product is not total over the model");
    for (const Clause& clause : fm.clauses()) {
        bool satisfied = false;
        for (int lit : clause) {
            if (p.selected(std::abs(lit)) == (lit > 0)) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied)
            return false;
    }
    return true;
}

} // namespace spltest
