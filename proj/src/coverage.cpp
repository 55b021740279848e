#include "spltest/coverage.hpp"

#include "spltest/errors.hpp"
#include "spltest/product_io.hpp"
#include "spltest/random.hpp"
#include "spltest/sat.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace spltest {

namespace {

void check_strength(int t, int n) {
    if (t < 2 || t > n)
        throw std::invalid_argument("strength t must satisfy 2 <= t <= n (t = " +
                                    std::to_string(t) + ", n = " +
                                    std::to_string(n) + ")");
}

// Exact for results below 2^53; +inf on overflow, which compares correctly
// against any budget.
double binomial_d(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * double(n - k + i) / double(i);
    return r;
}

// Ascending feature-index combinations, 0-based.
template <typename Fn>
void for_each_combination(int n, int t, Fn&& fn) {
    std::vector<int> c(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i)
        c[static_cast<size_t>(i)] = i;
    while (true) {
        fn(c);
        int i = t - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == n - t + i)
            --i;
        if (i < 0)
            break;
        ++c[static_cast<size_t>(i)];
        for (int k = i + 1; k < t; ++k)
            c[static_cast<size_t>(k)] = c[static_cast<size_t>(k - 1)] + 1;
    }
}

// Canonical t-sets pack into a 64-bit key (mixed radix over literal codes);
// always possible under any feasible enumeration budget.
struct TSetKeyer {
    uint64_t base;

    TSetKeyer(int n, int t) : base(2 * static_cast<uint64_t>(n) + 1) {
        unsigned __int128 max = 1;
        for (int i = 0; i < t; ++i) {
            max *= base;
            if (max > ~uint64_t{0})
                throw EnumerationBudgetError(
                    "t-set key space exceeds 64 bits; use the sampled estimators");
        }
    }

    // lits must be canonical (ascending feature index)
    uint64_t key(std::span<const int> lits) const {
        uint64_t k = 0;
        for (int lit : lits) {
            const uint64_t code =
                2 * (static_cast<uint64_t>(std::abs(lit)) - 1) + (lit < 0 ? 1 : 0) + 1;
            k = k * base + code;
        }
        return k;
    }
};

void check_suite_valid(const FeatureModel& fm, std::span<const Product> suite) {
    for (size_t i = 0; i < suite.size(); ++i) {
        if (!is_valid_product(fm, suite[i]))
            throw SuiteMismatchError("product at index " + std::to_string(i) +
                                     " violates the model");
    }
}

bool suite_covers(std::span<const Product> suite, std::span<const int> lits) {
    for (const Product& p : suite) {
        bool all = true;
        for (int lit : lits) {
            if (p.selected(std::abs(lit)) != (lit > 0)) {
                all = false;
                break;
            }
        }
        if (all)
            return true;
    }
    return false;
}

uint64_t exact_valid_tsets_unchecked(const FeatureModel& fm, int t) {
    Solver solver(fm, derive_seed(0, 0x7e7));
    uint64_t count = 0;
    std::vector<int> assumptions(static_cast<size_t>(t));
    for_each_combination(fm.feature_count(), t, [&](const std::vector<int>& combo) {
        for (uint32_t pattern = 0; pattern < (uint32_t{1} << t); ++pattern) {
            for (int k = 0; k < t; ++k) {
                const int feature = combo[static_cast<size_t>(k)] + 1;
                assumptions[static_cast<size_t>(k)] =
                    (pattern >> k) & 1u ? -feature : feature;
            }
            if (solver.satisfiable(assumptions))
                ++count;
        }
    });
    return count;
}

// Draw t distinct values from [0, universe) (Floyd's algorithm), then sort.
void sample_subset(RandomSource& rng, uint64_t universe, int t,
                   std::vector<uint64_t>& out) {
    out.clear();
    for (uint64_t j = universe - static_cast<uint64_t>(t); j < universe; ++j) {
        const uint64_t r = rng.next_below(j + 1);
        bool seen = false;
        for (uint64_t v : out)
            seen |= v == r;
        out.push_back(seen ? j : r);
    }
    std::sort(out.begin(), out.end());
}

// literal code (2 * feature0 + negated) -> signed external literal
int code_to_lit(uint64_t code) {
    const int feature = static_cast<int>(code / 2) + 1;
    return (code % 2) ? -feature : feature;
}

// One shared sample of `samples` valid canonical t-sets, by uniform
// rejection over the C(2n, t) universe.
std::vector<std::vector<int>> collect_valid_tsets(const FeatureModel& fm, int t,
                                                  uint64_t samples, uint64_t seed) {
    const int n = fm.feature_count();
    Solver solver(fm, derive_seed(seed, 0x7ca11));
    RandomSource rng(seed);
    std::vector<std::vector<int>> out;
    out.reserve(samples);
    std::vector<uint64_t> codes;
    std::vector<int> lits(static_cast<size_t>(t));
    uint64_t draws = 0;
    const uint64_t stall_draws = 50 * samples + 10'000;
    while (out.size() < samples) {
        ++draws;
        if ((draws >= 10'000 && out.empty()) || draws > stall_draws)
            throw SamplingStallError(
                "validity rate too low for rejection sampling after " +
                std::to_string(draws) + " draws; use --mode exact");
        sample_subset(rng, 2 * static_cast<uint64_t>(n), t, codes);
        bool clash = false;
        for (int k = 0; k + 1 < t; ++k)
            clash |= codes[static_cast<size_t>(k)] / 2 ==
                     codes[static_cast<size_t>(k + 1)] / 2;
        if (clash)
            continue;
        for (int k = 0; k < t; ++k)
            lits[static_cast<size_t>(k)] = code_to_lit(codes[static_cast<size_t>(k)]);
        if (solver.satisfiable(lits))
            out.push_back(lits);
    }
    return out;
}

} // namespace

void for_each_tset(const Product& p, int t,
                   const std::function<void(const TSet&)>& fn) {
    check_strength(t, p.size());
    std::vector<int> lits(static_cast<size_t>(t));
    for_each_combination(p.size(), t, [&](const std::vector<int>& combo) {
        for (int k = 0; k < t; ++k) {
            const int feature = combo[static_cast<size_t>(k)] + 1;
            lits[static_cast<size_t>(k)] = p.selected(feature) ? feature : -feature;
        }
        fn(TSet{lits});
    });
}

std::vector<TSet> tsets_of_product(const Product& p, int t) {
    std::vector<TSet> out;
    for_each_tset(p, t, [&](const TSet& ts) { out.push_back(ts); });
    return out;
}

uint64_t exact_valid_tsets(const FeatureModel& fm, int t,
                           const CoverageBudget& budget) {
    check_strength(t, fm.feature_count());
    const double checks = binomial_d(fm.feature_count(), t) * std::ldexp(1.0, t);
    if (!(checks <= double(budget.max_checks)))
        throw EnumerationBudgetError(
            "exact enumeration needs about " + std::to_string(checks) +
            " validity checks (budget " + std::to_string(budget.max_checks) +
            "); use estimate_valid_tsets");
    return exact_valid_tsets_unchecked(fm, t);
}

CoverageReport exact_coverage(const FeatureModel& fm,
                              std::span<const Product> suite, int t,
                              const CoverageBudget& budget) {
    const int n = fm.feature_count();
    check_strength(t, n);
    check_suite_valid(fm, suite);
    const double work =
        binomial_d(n, t) * (std::ldexp(1.0, t) + double(suite.size()));
    if (!(work <= double(budget.max_checks)))
        throw EnumerationBudgetError(
            "exact coverage needs about " + std::to_string(work) +
            " operations (budget " + std::to_string(budget.max_checks) +
            "); use estimate_coverage");

    const uint64_t total = exact_valid_tsets_unchecked(fm, t);
    const TSetKeyer keyer(n, t);
    std::unordered_set<uint64_t> covered;
    std::vector<int> lits(static_cast<size_t>(t));
    for (const Product& p : suite) {
        for_each_combination(n, t, [&](const std::vector<int>& combo) {
            for (int k = 0; k < t; ++k) {
                const int feature = combo[static_cast<size_t>(k)] + 1;
                lits[static_cast<size_t>(k)] = p.selected(feature) ? feature : -feature;
            }
            covered.insert(keyer.key(lits));
        });
    }

    CoverageReport report;
    report.t = t;
    report.method = CoverageMethod::exact;
    report.covered = double(covered.size());
    report.total_valid = double(total);
    report.coverage = total == 0 ? 0.0 : double(covered.size()) / double(total);
    return report;
}

CoverageReport estimate_valid_tsets(const FeatureModel& fm, int t,
                                    uint64_t samples, uint64_t seed) {
    const int n = fm.feature_count();
    check_strength(t, n);
    if (samples < 1)
        throw std::invalid_argument("samples must be at least 1");

    Solver solver(fm, derive_seed(seed, 0xe571));
    RandomSource rng(seed);
    std::vector<uint64_t> codes;
    std::vector<int> lits(static_cast<size_t>(t));
    uint64_t valid = 0;
    for (uint64_t s = 0; s < samples; ++s) {
        sample_subset(rng, 2 * static_cast<uint64_t>(n), t, codes);
        bool clash = false;
        for (int k = 0; k + 1 < t; ++k)
            clash |= codes[static_cast<size_t>(k)] / 2 ==
                     codes[static_cast<size_t>(k + 1)] / 2;
        if (clash)
            continue; // both polarities of one feature: invalid by definition
        for (int k = 0; k < t; ++k)
            lits[static_cast<size_t>(k)] = code_to_lit(codes[static_cast<size_t>(k)]);
        if (solver.satisfiable(lits))
            ++valid;
    }

    const double universe = binomial_d(2 * n, t);
    const double rate = double(valid) / double(samples);
    CoverageReport report;
    report.t = t;
    report.method = CoverageMethod::sampled;
    report.covered = rate * universe; // estimated number of valid t-sets
    report.total_valid = universe;
    report.coverage = rate;
    report.sample_size = samples;
    report.seed = seed;
    report.std_error = std::sqrt(rate * (1.0 - rate) / double(samples));
    return report;
}

CoverageReport estimate_coverage(const FeatureModel& fm,
                                 std::span<const Product> suite, int t,
                                 uint64_t samples, uint64_t seed,
                                 CoverageEstimator estimator,
                                 const CoverageBudget& budget) {
    (void)budget;
    const int n = fm.feature_count();
    check_strength(t, n);
    if (suite.empty())
        throw std::invalid_argument("suite must not be empty");
    if (samples < 1)
        throw std::invalid_argument("samples must be at least 1");
    check_suite_valid(fm, suite);

    CoverageReport report;
    report.t = t;
    report.method = CoverageMethod::sampled;
    report.sample_size = samples;
    report.seed = seed;

    if (estimator == CoverageEstimator::rejection) {
        const auto sample = collect_valid_tsets(fm, t, samples, seed);
        uint64_t hits = 0;
        for (const auto& lits : sample)
            if (suite_covers(suite, lits))
                ++hits;
        const double rate = double(hits) / double(samples);
        report.covered = double(hits);
        report.total_valid = double(samples);
        report.coverage = rate;
        report.std_error = std::sqrt(rate * (1.0 - rate) / double(samples));
        return report;
    }

    // covered_sets: sample t-set instances covered by the suite and weight
    // each by the inverse of its multiplicity, giving an unbiased estimate
    // of the number of distinct covered t-sets; divide by an estimated
    // total. The reported std_error tracks only the numerator's spread.
    const size_t m = suite.size();
    RandomSource rng(seed);
    std::vector<uint64_t> combo;
    std::vector<int> lits(static_cast<size_t>(t));
    double inv_sum = 0.0, inv_sq_sum = 0.0;
    for (uint64_t s = 0; s < samples; ++s) {
        const Product& p = suite[rng.next_below(m)];
        sample_subset(rng, static_cast<uint64_t>(n), t, combo);
        for (int k = 0; k < t; ++k) {
            const int feature = static_cast<int>(combo[static_cast<size_t>(k)]) + 1;
            lits[static_cast<size_t>(k)] = p.selected(feature) ? feature : -feature;
        }
        int multiplicity = 0;
        for (const Product& q : suite) {
            bool all = true;
            for (int lit : lits)
                all &= q.selected(std::abs(lit)) == (lit > 0);
            multiplicity += all ? 1 : 0;
        }
        const double w = 1.0 / double(multiplicity);
        inv_sum += w;
        inv_sq_sum += w * w;
    }
    const double instances = double(m) * binomial_d(n, t);
    const double mean_inv = inv_sum / double(samples);
    const double distinct_covered = instances * mean_inv;
    const auto totals = estimate_valid_tsets(fm, t, samples, derive_seed(seed, 0x707a1));
    const double total = totals.covered;

    const double var_inv =
        std::max(0.0, inv_sq_sum / double(samples) - mean_inv * mean_inv);
    report.covered = distinct_covered;
    report.total_valid = total;
    report.coverage =
        total <= 0.0 ? 0.0 : std::clamp(distinct_covered / total, 0.0, 1.0);
    report.std_error = total <= 0.0
                           ? 0.0
                           : instances * std::sqrt(var_inv / double(samples)) / total;
    return report;
}

std::vector<double> coverage_curve(const FeatureModel& fm,
                                   std::span<const Product> ordered, int t,
                                   CoverageMethod mode, uint64_t samples,
                                   uint64_t seed, const CoverageBudget& budget) {
    const int n = fm.feature_count();
    check_strength(t, n);
    check_suite_valid(fm, ordered);
    const size_t m = ordered.size();
    std::vector<double> curve;
    curve.reserve(m);

    if (mode == CoverageMethod::exact) {
        const double work = binomial_d(n, t) * (std::ldexp(1.0, t) + double(m));
        if (!(work <= double(budget.max_checks)))
            throw EnumerationBudgetError(
                "exact curve needs about " + std::to_string(work) +
                " operations (budget " + std::to_string(budget.max_checks) +
                "); use the sampled mode");
        const uint64_t total = exact_valid_tsets_unchecked(fm, t);
        const TSetKeyer keyer(n, t);
        std::unordered_set<uint64_t> covered;
        std::vector<int> lits(static_cast<size_t>(t));
        for (const Product& p : ordered) {
            for_each_combination(n, t, [&](const std::vector<int>& combo) {
                for (int k = 0; k < t; ++k) {
                    const int feature = combo[static_cast<size_t>(k)] + 1;
                    lits[static_cast<size_t>(k)] =
                        p.selected(feature) ? feature : -feature;
                }
                covered.insert(keyer.key(lits));
            });
            curve.push_back(total == 0 ? 0.0
                                       : double(covered.size()) / double(total));
        }
        return curve;
    }

    if (samples < 1)
        throw std::invalid_argument("samples must be at least 1 in sampled mode");
    // one shared sample across all prefixes keeps the curve monotone and
    // prefix comparisons paired
    const auto sample = collect_valid_tsets(fm, t, samples, seed);
    std::vector<uint64_t> first_cover(m + 1, 0); // index of first covering product
    for (const auto& lits : sample) {
        size_t first = m;
        for (size_t i = 0; i < m && first == m; ++i) {
            bool all = true;
            for (int lit : lits)
                all &= ordered[i].selected(std::abs(lit)) == (lit > 0);
            if (all)
                first = i;
        }
        if (first < m)
            ++first_cover[first + 1];
    }
    uint64_t cumulative = 0;
    for (size_t k = 1; k <= m; ++k) {
        cumulative += first_cover[k];
        curve.push_back(double(cumulative) / double(samples));
    }
    return curve;
}

std::vector<bool> redundant_products(const FeatureModel& fm,
                                     std::span<const Product> suite, int t,
                                     const CoverageBudget& budget) {
    const int n = fm.feature_count();
    check_strength(t, n);
    check_suite_valid(fm, suite);
    const size_t m = suite.size();
    const double work = 2.0 * binomial_d(n, t) * double(m);
    if (!(work <= double(budget.max_checks)))
        throw EnumerationBudgetError(
            "redundancy check needs about " + std::to_string(work) +
            " operations (budget " + std::to_string(budget.max_checks) + ")");

    const TSetKeyer keyer(n, t);
    std::unordered_map<uint64_t, uint32_t> multiplicity;
    std::vector<int> lits(static_cast<size_t>(t));
    for (const Product& p : suite) {
        for_each_combination(n, t, [&](const std::vector<int>& combo) {
            for (int k = 0; k < t; ++k) {
                const int feature = combo[static_cast<size_t>(k)] + 1;
                lits[static_cast<size_t>(k)] = p.selected(feature) ? feature : -feature;
            }
            ++multiplicity[keyer.key(lits)];
        });
    }
    std::vector<bool> redundant(m, false);
    for (size_t i = 0; i < m; ++i) {
        bool all_shared = true;
        for_each_combination(n, t, [&](const std::vector<int>& combo) {
            if (!all_shared)
                return;
            for (int k = 0; k < t; ++k) {
                const int feature = combo[static_cast<size_t>(k)] + 1;
                lits[static_cast<size_t>(k)] =
                    suite[i].selected(feature) ? feature : -feature;
            }
            if (multiplicity[keyer.key(lits)] < 2)
                all_shared = false;
        });
        redundant[i] = all_shared;
    }
    return redundant;
}

std::string CoverageReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["t"] = t;
    doc["method"] = method == CoverageMethod::exact ? "exact" : "sampled";
    doc["covered"] = covered;
    doc["total_valid"] = total_valid;
    doc["coverage"] = coverage;
    if (method == CoverageMethod::sampled) {
        doc["sample_size"] = sample_size;
        doc["seed"] = seed;
        doc["std_error"] = std_error;
    }
    return doc.dump(2) + "\n";
}

std::string CoverageReport::csv_header() {
    return "t,method,covered,total_valid,coverage,sample_size,seed,std_error";
}

std::string CoverageReport::to_csv_row() const {
    std::string row = std::to_string(t);
    row += method == CoverageMethod::exact ? ",exact," : ",sampled,";
    row += format_double(covered) + "," + format_double(total_valid) + "," +
           format_double(coverage) + ",";
    if (method == CoverageMethod::sampled) {
        row += std::to_string(sample_size) + "," + std::to_string(seed) + "," +
               format_double(std_error);
    } else {
        row += ",,";
    }
    return row;
}

} // namespace spltest
