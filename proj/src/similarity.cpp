#include "spltest/similarity.hpp"

#include <atomic>
#include <stdexcept>

namespace spltest {

namespace {
std::atomic<uint64_t> g_jaccard_evals{0};
}

double jaccard_distance(const Product& p, const Product& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("products over different models");
    if (p.size() == 0)
        throw std::invalid_argument("jaccard distance is undefined for empty products");
    g_jaccard_evals.fetch_add(1, std::memory_order_relaxed);
    const int n = p.size();
    const int a = p.agreement(q);
    return 1.0 - double(a) / double(2 * n - a);
}

double fitness(std::span<const Product> suite) {
    const size_t m = suite.size();
    double sum = 0.0;
    for (size_t i = 0; i + 1 < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            sum += jaccard_distance(suite[i], suite[j]);
    return sum;
}

double DistanceMatrix::sum() const {
    double total = 0.0;
    for (double v : d_)
        total += v;
    return total;
}

DistanceMatrix distance_matrix(std::span<const Product> suite) {
    const size_t m = suite.size();
    DistanceMatrix out(m);
    for (size_t i = 0; i + 1 < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            const double d = jaccard_distance(suite[i], suite[j]);
            out.d_[i * m + j] = d;
            out.d_[j * m + i] = d;
        }
    }
    return out;
}

uint64_t jaccard_eval_count() {
    return g_jaccard_evals.load(std::memory_order_relaxed);
}

void reset_jaccard_eval_count() {
    g_jaccard_evals.store(0, std::memory_order_relaxed);
}

} // namespace spltest
