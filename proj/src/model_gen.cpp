#include "spltest/errors.hpp"
#include "spltest/feature_model.hpp"
#include "spltest/random.hpp"
#include "spltest/sat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spltest {

// Clauses of 2 or 3 literals over distinct features, mirroring the
// requires/excludes-style cross-tree constraints that dominate real models.
FeatureModel generate_random_model(int n, double clause_density, uint64_t seed) {
    if (n < 2)
        throw std::invalid_argument("random model needs at least 2 features");
    if (!(clause_density >= 0.0))
        throw std::invalid_argument("clause density must be non-negative");

    std::vector<std::string> features(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        features[static_cast<size_t>(i - 1)] = "f" + std::to_string(i);

    const uint64_t target = static_cast<uint64_t>(std::llround(clause_density * n));
    RandomSource rng(seed);
    const uint64_t solver_seed = derive_seed(seed, 0xc0de);

    std::vector<Clause> clauses;
    uint64_t retries = 0;
    const uint64_t max_retries = 50 + 20 * target;
    while (clauses.size() < target) {
        const int width = std::min(2 + static_cast<int>(rng.next_below(2)), n);
        Clause clause;
        while (static_cast<int>(clause.size()) < width) {
            const int var = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
            bool dup = false;
            for (int l : clause)
                dup |= std::abs(l) == var;
            if (dup)
                continue;
            clause.push_back(rng.next_bool() ? var : -var);
        }
        clauses.push_back(clause);
        FeatureModel candidate(features, clauses);
        if (!solve(candidate, {}, solver_seed)) {
            clauses.pop_back(); // this clause made the model inconsistent
            if (++retries > max_retries)
                throw Error("random model generation exhausted retries at density " +
                            std::to_string(clause_density));
        }
    }
    return FeatureModel(std::move(features), std::move(clauses));
}

} // namespace spltest
