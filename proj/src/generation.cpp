#include "spltest/generation.hpp"

#include "spltest/errors.hpp"
#include "spltest/product_io.hpp"
#include "spltest/sat.hpp"
#include "spltest/similarity.hpp"

#include <chrono>
#include <stdexcept>

namespace spltest {

const char* prioritizer_name(Prioritizer p) {
    return p == Prioritizer::greedy ? "greedy" : "near-optimal";
}

std::vector<Product> unpredictable_generate(const FeatureModel& fm, int m,
                                            uint64_t seed) {
    if (m < 1)
        throw std::invalid_argument("suite size must be at least 1");
    SamplerSession session(fm, seed);
    std::vector<Product> suite;
    suite.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        suite.push_back(session.next());
    return suite;
}

SearchResult search_generate(const FeatureModel& fm, const SearchConfig& cfg) {
    if (cfg.suite_size < 1)
        throw std::invalid_argument("suite size must be at least 1");
    if (!cfg.budget_seconds && !cfg.max_iterations)
        throw std::invalid_argument("a time budget or an iteration cap is required");
    if (cfg.budget_seconds && !(*cfg.budget_seconds > 0.0))
        throw std::invalid_argument("time budget must be positive");
    if (cfg.max_iterations && *cfg.max_iterations == 0)
        throw std::invalid_argument("iteration cap must be positive");

    using clock = std::chrono::steady_clock;
    const bool wall_mode = cfg.budget_seconds.has_value();
    const auto started = clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(clock::now() - started)
            .count();
    };

    const size_t m = static_cast<size_t>(cfg.suite_size);
    SamplerSession session(fm, cfg.seed);
    std::vector<Product> suite;
    suite.reserve(m);
    for (size_t i = 0; i < m; ++i)
        suite.push_back(session.next());

    // pairwise distances and per-member row sums
    std::vector<double> dist(m * m, 0.0);
    std::vector<double> row_sum(m, 0.0);
    double fit = 0.0;
    for (size_t i = 0; i + 1 < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            const double d = jaccard_distance(suite[i], suite[j]);
            dist[i * m + j] = d;
            dist[j * m + i] = d;
            row_sum[i] += d;
            row_sum[j] += d;
            fit += d;
        }
    }

    SearchTrace trace;
    trace.wall_clock_mode = wall_mode;
    trace.initial_fitness = fit;

    uint64_t iter = 0;
    std::vector<double> cand_dist(m, 0.0);
    while (true) {
        if (cfg.max_iterations && iter >= *cfg.max_iterations)
            break;
        if (cfg.budget_seconds && elapsed_ms() >= *cfg.budget_seconds * 1000.0)
            break;
        ++iter;

        // worst member: minimum sum of distances to the rest
        size_t worst = 0;
        for (size_t i = 1; i < m; ++i)
            if (row_sum[i] < row_sum[worst])
                worst = i;

        // fresh product that differs from the worst one
        bool got = false;
        Product candidate;
        for (uint64_t draws = 0; draws < cfg.redraw_limit; ++draws) {
            candidate = session.next();
            if (!(candidate == suite[worst])) {
                got = true;
                break;
            }
        }

        const double before = fit;
        bool accepted = false;
        if (got) {
            double cand_sum = 0.0;
            for (size_t k = 0; k < m; ++k) {
                if (k == worst)
                    continue;
                cand_dist[k] = jaccard_distance(candidate, suite[k]);
                cand_sum += cand_dist[k];
            }
            const double new_fit = fit - row_sum[worst] + cand_sum;
            if (new_fit > fit) { // keep only strict improvements
                accepted = true;
                suite[worst] = candidate;
                for (size_t k = 0; k < m; ++k) {
                    if (k == worst)
                        continue;
                    row_sum[k] += cand_dist[k] - dist[worst * m + k];
                    dist[worst * m + k] = cand_dist[k];
                    dist[k * m + worst] = cand_dist[k];
                }
                row_sum[worst] = cand_sum;
                fit = new_fit;
            }
        }
        trace.records.push_back({iter, wall_mode ? elapsed_ms() : 0.0, before,
                                 fit, accepted});
        if (accepted)
            ++trace.accepted_count;
    }

    trace.iterations = iter;
    trace.final_fitness = fit;

    SearchResult result;
    result.suite = cfg.prioritizer == Prioritizer::greedy
                       ? greedy_prioritize(suite)
                       : near_optimal_prioritize(suite);
    result.suite.provenance = Provenance::search;
    result.suite.seed = cfg.seed;
    result.trace = std::move(trace);
    return result;
}

std::string trace_to_csv(const SearchTrace& trace) {
    std::string out = "iteration,elapsed_ms,fitness,accepted\n";
    for (const auto& rec : trace.records) {
        out += std::to_string(rec.iteration);
        out += ',';
        out += format_double(rec.elapsed_ms);
        out += ',';
        out += format_double(rec.fitness_after);
        out += ',';
        out += rec.accepted ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace spltest
