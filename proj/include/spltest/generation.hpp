#pragma once

#include "spltest/feature_model.hpp"
#include "spltest/prioritization.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spltest {

enum class Prioritizer { greedy, near_optimal };

const char* prioritizer_name(Prioritizer p);

struct SearchConfig {
    int suite_size = 1; // m
    // At least one budget is required. Iteration-capped runs are
    // bit-reproducible; wall-clock runs are not.
    std::optional<double> budget_seconds;
    std::optional<uint64_t> max_iterations;
    uint64_t seed = 0;
    Prioritizer prioritizer = Prioritizer::near_optimal;
    // Bound on the draw-until-different-from-worst loop; when exhausted the
    // iteration is recorded as rejected.
    uint64_t redraw_limit = 1000;
};

struct SearchTraceRecord {
    uint64_t iteration; // 1-based
    double elapsed_ms;  // 0 in iteration-capped runs (no clock reads)
    double fitness_before;
    double fitness_after;
    bool accepted;
};

struct SearchTrace {
    std::vector<SearchTraceRecord> records;
    bool wall_clock_mode = false;
    double initial_fitness = 0.0;
    double final_fitness = 0.0;
    uint64_t iterations = 0;
    uint64_t accepted_count = 0;
};

struct SearchResult {
    PrioritizedSuite suite;
    SearchTrace trace;
};

// m products drawn from one sampler session: pairwise distinct until the
// product space is exhausted, then the session reinitializes and duplicates
// may appear. Throws InconsistentModelError.
std::vector<Product> unpredictable_generate(const FeatureModel& fm, int m,
                                            uint64_t seed);

// (1+1) evolutionary search over m-product suites: start from an
// unpredictable draw, then repeatedly try to replace the worst member (the
// one with the minimum sum of distances to the rest) with a fresh sampled
// product, keeping the replacement only when the similarity fitness
// strictly increases. Returns the final suite ordered by cfg.prioritizer
// plus the per-iteration trace.
SearchResult search_generate(const FeatureModel& fm, const SearchConfig& cfg);

// CSV with columns iteration,elapsed_ms,fitness,accepted.
std::string trace_to_csv(const SearchTrace& trace);

} // namespace spltest
