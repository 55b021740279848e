#pragma once

#include "spltest/feature_model.hpp"
#include "spltest/random.hpp"

#include <optional>
#include <span>
#include <vector>

namespace spltest {

// DPLL engine with two-watched-literal unit propagation and chronological
// conflict backtracking. The decision heuristic draws both the branching
// variable and its polarity from a seeded random source, so the order in
// which solutions are found is randomized rather than enumeration-ordered.
class Solver {
public:
    Solver(const FeatureModel& fm, uint64_t seed);

    // Total satisfying assignment extending `assumptions`, or nullopt when
    // unsatisfiable. Throws std::invalid_argument when an assumption names
    // an out-of-range feature or the list contains both +i and -i (a
    // structurally contradictory query, distinct from UNSAT).
    std::optional<Product> solve(std::span<const int> assumptions = {});

    // Same search, without materializing the assignment.
    bool satisfiable(std::span<const int> assumptions = {});

    // Adds a clause forbidding exactly `p`.
    void block(const Product& p);
    void clear_blocked();
    size_t blocked_count() const { return blocked_count_; }

private:
    struct ClauseRef {
        uint32_t begin;
        uint32_t size;
    };
    struct Decision {
        size_t trail_pos;
        int lit;
        bool flipped;
    };

    void add_clause_internal(std::span<const int32_t> lits);
    void rebuild_watches();
    bool enqueue(int lit);
    bool propagate();
    bool search(std::span<const int> assumptions);
    void backtrack_to(size_t trail_pos);

    int nvars_;
    std::vector<int32_t> lit_pool_;
    std::vector<ClauseRef> clauses_;
    std::vector<int> unit_lits_; // 1-literal clauses, enqueued at root
    size_t base_clause_count_ = 0;
    size_t base_lit_count_ = 0;
    size_t base_unit_count_ = 0;
    size_t blocked_count_ = 0;
    std::vector<std::vector<uint32_t>> watches_; // per internal literal
    std::vector<int8_t> value_;                  // per var: -1 unassigned / 0 false / 1 true
    std::vector<int> trail_;
    size_t qhead_ = 0;
    std::vector<Decision> decisions_;
    std::vector<int> free_vars_; // sparse set of unassigned variables
    std::vector<int> free_pos_;
    RandomSource rng_;
};

// One-shot convenience around Solver.
std::optional<Product> solve(const FeatureModel& fm,
                             std::span<const int> assumptions,
                             uint64_t seed);

// Consistency of a canonical t-set against the model. The result does not
// depend on any seed.
bool is_valid_tset(const FeatureModel& fm, const TSet& ts);

// Emits valid products in a randomized order. A blocking clause is added
// after each emission so products never repeat within a cycle; once the
// space is exhausted the blocked set is cleared (reinitialization) and
// sampling continues. Single-owner; distinct sessions over the same model
// may run in parallel.
class SamplerSession {
public:
    // Throws InconsistentModelError when the model has no valid product.
    SamplerSession(const FeatureModel& fm, uint64_t seed);

    const FeatureModel& model() const { return *fm_; }
    Product next();
    uint64_t emitted() const { return emitted_; }
    uint64_t reinitializations() const { return reinits_; }

private:
    const FeatureModel* fm_;
    Solver solver_;
    uint64_t emitted_ = 0;
    uint64_t reinits_ = 0;
};

} // namespace spltest
