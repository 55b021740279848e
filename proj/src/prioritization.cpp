#include "spltest/prioritization.hpp"

#include "spltest/random.hpp"
#include "spltest/similarity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spltest {

const char* provenance_name(Provenance p) {
    switch (p) {
    case Provenance::greedy: return "greedy";
    case Provenance::near_optimal: return "near_optimal";
    case Provenance::random: return "random";
    case Provenance::search: return "search";
    }
    return "?";
}

namespace {

// Pairwise agreement counts; distance comparisons reduce to exact integer
// comparisons (d is strictly decreasing in the agreement for fixed n).
std::vector<int> agreement_matrix(std::span<const Product> suite) {
    const size_t m = suite.size();
    std::vector<int> a(m * m, 0);
    for (size_t i = 0; i + 1 < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            const int v = suite[i].agreement(suite[j]);
            a[i * m + j] = v;
            a[j * m + i] = v;
        }
    }
    return a;
}

// First maximum-distance pair in ascending (i, j) scan order over current
// positions ("take the first one in case of equality").
std::pair<size_t, size_t> max_distance_pair(const std::vector<int>& agree,
                                            const std::vector<int>& remaining,
                                            size_t m) {
    size_t best_i = 0, best_j = 1;
    int best_agree = std::numeric_limits<int>::max();
    for (size_t i = 0; i + 1 < remaining.size(); ++i) {
        for (size_t j = i + 1; j < remaining.size(); ++j) {
            const int a = agree[static_cast<size_t>(remaining[i]) * m +
                                static_cast<size_t>(remaining[j])];
            if (a < best_agree) {
                best_agree = a;
                best_i = i;
                best_j = j;
            }
        }
    }
    return {best_i, best_j};
}

} // namespace

PrioritizedSuite greedy_prioritize(std::span<const Product> suite) {
    const size_t m = suite.size();
    PrioritizedSuite out;
    out.provenance = Provenance::greedy;
    if (m == 0)
        return out;
    const std::vector<int> agree = agreement_matrix(suite);
    std::vector<int> remaining(m);
    for (size_t i = 0; i < m; ++i)
        remaining[i] = static_cast<int>(i);

    while (remaining.size() > 1) {
        auto [pi, pj] = max_distance_pair(agree, remaining, m);
        out.products.push_back(suite[static_cast<size_t>(remaining[pi])]);
        out.products.push_back(suite[static_cast<size_t>(remaining[pj])]);
        remaining.erase(remaining.begin() + static_cast<long>(pj));
        remaining.erase(remaining.begin() + static_cast<long>(pi));
    }
    if (remaining.size() == 1)
        out.products.push_back(suite[static_cast<size_t>(remaining[0])]);
    return out;
}

PrioritizedSuite near_optimal_prioritize(std::span<const Product> suite) {
    const size_t m = suite.size();
    PrioritizedSuite out;
    out.provenance = Provenance::near_optimal;
    if (m == 0)
        return out;
    if (m == 1) {
        out.products.push_back(suite[0]);
        return out;
    }
    const std::vector<int> agree = agreement_matrix(suite);
    const int n = suite[0].size();
    auto dist = [&](size_t i, size_t j) {
        const int a = agree[i * m + j];
        return 1.0 - double(a) / double(2 * n - a);
    };

    std::vector<int> remaining(m);
    for (size_t i = 0; i < m; ++i)
        remaining[i] = static_cast<int>(i);
    std::vector<size_t> ordered;

    auto [pi, pj] = max_distance_pair(agree, remaining, m);
    ordered.push_back(static_cast<size_t>(remaining[pi]));
    ordered.push_back(static_cast<size_t>(remaining[pj]));
    remaining.erase(remaining.begin() + static_cast<long>(pj));
    remaining.erase(remaining.begin() + static_cast<long>(pi));

    // running sum of distances to the ordered prefix, per remaining product
    std::vector<double> sum_to_ordered(remaining.size(), 0.0);
    for (size_t r = 0; r < remaining.size(); ++r)
        for (size_t k : ordered)
            sum_to_ordered[r] += dist(static_cast<size_t>(remaining[r]), k);

    while (!remaining.empty()) {
        size_t best = 0;
        for (size_t r = 1; r < remaining.size(); ++r) {
            if (sum_to_ordered[r] > sum_to_ordered[best])
                best = r;
        }
        const size_t chosen = static_cast<size_t>(remaining[best]);
        ordered.push_back(chosen);
        remaining.erase(remaining.begin() + static_cast<long>(best));
        sum_to_ordered.erase(sum_to_ordered.begin() + static_cast<long>(best));
        for (size_t r = 0; r < remaining.size(); ++r)
            sum_to_ordered[r] += dist(static_cast<size_t>(remaining[r]), chosen);
    }

    for (size_t idx : ordered)
        out.products.push_back(suite[idx]);
    return out;
}

PrioritizedSuite random_prioritize(std::span<const Product> suite, uint64_t seed) {
    PrioritizedSuite out;
    out.provenance = Provenance::random;
    out.seed = seed;
    out.products.assign(suite.begin(), suite.end());
    RandomSource rng(seed);
    for (size_t i = out.products.size(); i > 1; --i) {
        const size_t j = rng.next_below(i);
        std::swap(out.products[i - 1], out.products[j]);
    }
    return out;
}

double area_under_curve(std::span<const double> curve) {
    if (curve.empty())
        throw std::invalid_argument("coverage curve must not be empty");
    for (double v : curve) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("coverage values must lie in [0, 1]");
    }
    double area = 0.0;
    for (size_t i = 0; i + 1 < curve.size(); ++i)
        area += (curve[i] + curve[i + 1]) / 2.0;
    return area;
}

} // namespace spltest
