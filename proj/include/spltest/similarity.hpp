#pragma once

#include "spltest/feature_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spltest {

// Jaccard distance between two products, treating a product as the set of
// its signed feature literals (unselected features are members too):
//
//   d(p, q) = 1 - |p ∩ q| / |p ∪ q| = 1 - a / (2n - a)
//
// where a is the number of features with equal polarity. Range [0, 1];
// 0 iff p == q, 1 iff the products disagree on every feature.
// Throws std::invalid_argument on size mismatch or empty products.
double jaccard_distance(const Product& p, const Product& q);

// Similarity fitness of a product set: the sum of Jaccard distances over
// all unordered pairs. 0 for suites of size <= 1. Performs exactly
// m(m-1)/2 distance evaluations and never enumerates t-sets.
double fitness(std::span<const Product> suite);

// Symmetric pairwise-distance cache with zero diagonal.
class DistanceMatrix {
public:
    size_t size() const { return m_; }
    double at(size_t i, size_t j) const { return d_[i * m_ + j]; }

    // Sum of every entry; equals 2 * fitness of the originating suite.
    double sum() const;

private:
    friend DistanceMatrix distance_matrix(std::span<const Product> suite);
    explicit DistanceMatrix(size_t m) : m_(m), d_(m * m, 0.0) {}

    size_t m_;
    std::vector<double> d_;
};

DistanceMatrix distance_matrix(std::span<const Product> suite);

// Instrumentation: number of jaccard_distance evaluations since the last
// reset. Used to assert the cost contract of the fitness function.
uint64_t jaccard_eval_count();
void reset_jaccard_eval_count();

} // namespace spltest
