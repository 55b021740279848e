#pragma once

#include "spltest/feature_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spltest {

enum class Provenance { greedy, near_optimal, random, search };

const char* provenance_name(Provenance p);

// An ordering of a product set: always a permutation of the input.
struct PrioritizedSuite {
    std::vector<Product> products;
    Provenance provenance = Provenance::random;
    std::optional<uint64_t> seed; // set for randomized orderings
};

// Repeatedly extracts the maximum-distance pair from the remaining set and
// appends both members (in current scan order); an odd leftover goes last.
// Ties are broken by the first pair found when scanning positions (i, j),
// i < j, in ascending order; distance comparisons are exact (integer
// agreement counts, not floats). Empty input yields empty output.
PrioritizedSuite greedy_prioritize(std::span<const Product> suite);

// Seeds the ordering with the maximum-distance pair (same tie rule as
// greedy), then repeatedly appends the remaining product with the largest
// sum of distances to everything already ordered; ties keep the first
// candidate in scan order.
PrioritizedSuite near_optimal_prioritize(std::span<const Product> suite);

// Uniform random permutation, deterministic per seed.
PrioritizedSuite random_prioritize(std::span<const Product> suite, uint64_t seed);

// Trapezoidal area under a coverage curve: sum of (c[i] + c[i+1]) / 2 over
// consecutive points. Higher is better. Throws std::invalid_argument when
// the curve is empty or a value is outside [0, 1].
double area_under_curve(std::span<const double> curve);

} // namespace spltest
