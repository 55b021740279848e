#pragma once

#include "spltest/feature_model.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace spltest {

enum class CoverageMethod { exact, sampled };

// Result of a coverage measurement. `coverage` always equals
// covered / total_valid; what the two counts refer to depends on the
// producing operation:
//   exact_valid_tsets / exact_coverage : exact t-set counts over the model.
//   estimate_valid_tsets : covered = estimated number of valid t-sets,
//       total_valid = C(2n, t) (the sampling universe), coverage = the
//       estimated validity rate of the universe.
//   estimate_coverage (rejection) : covered = sampled valid t-sets hit by
//       the suite, total_valid = sample size, coverage = the unbiased
//       coverage estimate.
//   estimate_coverage (covered_sets) : covered = estimated distinct t-sets
//       covered by the suite, total_valid = estimated number of valid
//       t-sets, coverage = their ratio (clamped to [0, 1]).
// std_error is always the standard error of `coverage`; scale by
// total_valid for count-level errors.
struct CoverageReport {
    int t = 0;
    CoverageMethod method = CoverageMethod::exact;
    double covered = 0.0;
    double total_valid = 0.0;
    double coverage = 0.0;
    uint64_t sample_size = 0; // sampled only
    uint64_t seed = 0;        // sampled only
    double std_error = 0.0;   // sampled only

    std::string to_json() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

// Cap on the work exact operations may perform, counted in t-set validity
// checks plus union insertions. Exact operations refuse (throw
// EnumerationBudgetError) rather than silently degrade.
struct CoverageBudget {
    uint64_t max_checks = 10'000'000;
};

// The C(n, t) canonical t-sets exhibited by a product: every choice of t
// features with p's polarities. All of them are valid by construction.
// Throws std::invalid_argument when t is outside [2, n].
void for_each_tset(const Product& p, int t,
                   const std::function<void(const TSet&)>& fn);
std::vector<TSet> tsets_of_product(const Product& p, int t);

// Number of valid t-sets of the model, by exhaustive enumeration of all
// C(n, t) * 2^t canonical candidates.
uint64_t exact_valid_tsets(const FeatureModel& fm, int t,
                           const CoverageBudget& budget = {});

// Exact t-wise coverage of a suite: the deduplicated union of the t-sets of
// every product, over the exact valid-t-set count. Throws
// std::invalid_argument naming the index of any product that violates the
// model. An empty suite has coverage 0.
CoverageReport exact_coverage(const FeatureModel& fm,
                              std::span<const Product> suite, int t,
                              const CoverageBudget& budget = {});

// Monte-Carlo estimate of the number of valid t-sets: draws `samples` sets
// of t distinct literals uniformly from the 2n literals (draws pairing +f
// with -f count as invalid, consistent with a C(2n, t) universe) and scales
// the observed validity rate by C(2n, t).
CoverageReport estimate_valid_tsets(const FeatureModel& fm, int t,
                                    uint64_t samples, uint64_t seed);

enum class CoverageEstimator {
    // Draw t-sets uniformly from the C(2n, t) universe, discard invalid
    // ones until `samples` valid t-sets are collected, and report the
    // fraction covered by the suite. Unbiased for the coverage ratio.
    rejection,
    // Sample t-set instances from those covered by the products and
    // estimate the distinct-covered count via inverse multiplicity
    // weighting, divided by an estimate of the total valid count.
    covered_sets,
};

// Monte-Carlo estimate of suite coverage. The suite must be non-empty and
// valid. Throws SamplingStallError when (rejection mode) the model's
// validity rate is too low for the draw budget.
CoverageReport estimate_coverage(const FeatureModel& fm,
                                 std::span<const Product> suite, int t,
                                 uint64_t samples, uint64_t seed,
                                 CoverageEstimator estimator = CoverageEstimator::rejection,
                                 const CoverageBudget& budget = {});

// Per-prefix coverage of an ordered suite: element k-1 is the coverage of
// the first k products, k = 1..m. Exact mode is non-decreasing by
// construction; sampled mode evaluates every prefix against one shared
// sample of valid t-sets, so it is monotone as well and prefix comparisons
// are paired.
std::vector<double> coverage_curve(const FeatureModel& fm,
                                   std::span<const Product> ordered, int t,
                                   CoverageMethod mode,
                                   uint64_t samples = 0, uint64_t seed = 0,
                                   const CoverageBudget& budget = {});

// Set-coverage redundancy: element i is true iff dropping product i leaves
// the exact coverage unchanged (every t-set of product i is also covered by
// another product).
std::vector<bool> redundant_products(const FeatureModel& fm,
                                     std::span<const Product> suite, int t,
                                     const CoverageBudget& budget = {});

} // namespace spltest
