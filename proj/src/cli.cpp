#include "spltest/cli.hpp"

#include "spltest/coverage.hpp"
#include "spltest/errors.hpp"
#include "spltest/feature_tree.hpp"
#include "spltest/generation.hpp"
#include "spltest/prioritization.hpp"
#include "spltest/product_io.hpp"
#include "spltest/random.hpp"
#include "spltest/sat.hpp"
#include "spltest/similarity.hpp"
#include "spltest/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace spltest {

namespace {

std::string now_utc_iso() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sniff_format(const fs::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".json")
        return "native";
    if (ext == ".tree")
        return "tree";
    return "dimacs";
}

FeatureModel load_model(const fs::path& path, const std::string& format) {
    const std::string text = read_file(path);
    const std::string fmt = format.empty() ? sniff_format(path) : format;
    if (fmt == "dimacs")
        return parse_dimacs(text);
    if (fmt == "native")
        return parse_native(text);
    if (fmt == "tree")
        return compile_tree(parse_tree(text));
    throw Error("unknown model format: " + fmt);
}

fs::path resolve_out_dir(const std::string& flag) {
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("SPLTEST_OUT_DIR"); env && *env)
        return env;
    return ".";
}

struct Manifest {
    std::string command;
    std::vector<std::string> args; // everything needed to rerun, except --out
    ordered_json parameters;
    uint64_t seed = 0;
    bool deterministic = true;
    std::string started;
    std::vector<std::string> outputs;
};

void write_manifest(const fs::path& dir, const Manifest& man) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = "spltest";
    doc["version"] = kVersion;
    doc["command"] = man.command;
    doc["args"] = man.args;
    doc["parameters"] = man.parameters;
    doc["seed"] = man.seed;
    doc["deterministic"] = man.deterministic;
    doc["outputs"] = man.outputs;
    doc["started_utc"] = man.started;
    doc["finished_utc"] = now_utc_iso();
    atomic_write_file(dir / "manifest.json", doc.dump(2) + "\n");
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(csv);
    while (std::getline(is, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty())
        return 0.0;
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / double(v.size());
}

double stddev_of(const std::vector<double>& v) {
    if (v.size() < 2)
        return 0.0;
    const double mu = mean_of(v);
    double s = 0.0;
    for (double x : v)
        s += (x - mu) * (x - mu);
    return std::sqrt(s / double(v.size() - 1));
}

class UsageError : public Error {
public:
    using Error::Error;
};

// ---- generate --------------------------------------------------------------

struct GenerateOpts {
    std::string model;
    std::string format;
    int products = 1;
    std::string strategy = "search";
    std::optional<double> budget_seconds;
    std::optional<uint64_t> iterations;
    std::string prioritizer = "near-optimal";
    uint64_t seed = 0;
    std::string out;
};

int do_generate(const GenerateOpts& opts) {
    if (opts.strategy == "search" && !opts.budget_seconds && !opts.iterations)
        throw UsageError("--strategy search needs --budget-seconds or --iterations");
    const fs::path dir = resolve_out_dir(opts.out);
    fs::create_directories(dir);

    Manifest man;
    man.started = now_utc_iso();
    man.command = "generate";
    man.seed = opts.seed;
    man.deterministic = !opts.budget_seconds.has_value();

    const fs::path model_path = fs::absolute(opts.model);
    const std::string format = opts.format.empty() ? sniff_format(model_path) : opts.format;
    const FeatureModel fm = load_model(model_path, format);

    const Prioritizer prio = opts.prioritizer == "greedy" ? Prioritizer::greedy
                                                          : Prioritizer::near_optimal;
    PrioritizedSuite ordered;
    std::optional<SearchTrace> trace;
    if (opts.strategy == "unpredictable") {
        const auto suite = unpredictable_generate(fm, opts.products, opts.seed);
        ordered = prio == Prioritizer::greedy ? greedy_prioritize(suite)
                                              : near_optimal_prioritize(suite);
    } else {
        SearchConfig cfg;
        cfg.suite_size = opts.products;
        cfg.budget_seconds = opts.budget_seconds;
        cfg.max_iterations = opts.iterations;
        cfg.seed = opts.seed;
        cfg.prioritizer = prio;
        auto result = search_generate(fm, cfg);
        ordered = std::move(result.suite);
        trace = std::move(result.trace);
    }

    atomic_write_file(dir / "products.csv", products_to_csv(fm, ordered.products));
    man.outputs.push_back("products.csv");
    if (trace) {
        atomic_write_file(dir / "trace.csv", trace_to_csv(*trace));
        man.outputs.push_back("trace.csv");
    }

    man.args = {"--model", model_path.string(), "--format", format,
                "--products", std::to_string(opts.products),
                "--strategy", opts.strategy,
                "--prioritizer", opts.prioritizer,
                "--seed", std::to_string(opts.seed)};
    if (opts.iterations) {
        man.args.push_back("--iterations");
        man.args.push_back(std::to_string(*opts.iterations));
    }
    if (opts.budget_seconds) {
        man.args.push_back("--budget-seconds");
        man.args.push_back(format_double(*opts.budget_seconds));
    }
    man.parameters = {{"model", model_path.string()},
                      {"format", format},
                      {"products", opts.products},
                      {"strategy", opts.strategy},
                      {"prioritizer", opts.prioritizer},
                      {"seed", opts.seed}};
    if (opts.iterations)
        man.parameters["iterations"] = *opts.iterations;
    if (opts.budget_seconds)
        man.parameters["budget_seconds"] = *opts.budget_seconds;
    man.parameters["fitness"] = fitness(ordered.products);
    write_manifest(dir, man);

    std::cout << "wrote " << (dir / "products.csv").string() << " ("
              << ordered.products.size() << " products, fitness "
              << format_double(fitness(ordered.products)) << ")\n";
    return exit_code::ok;
}

// ---- prioritize -------------------------------------------------------------

struct PrioritizeOpts {
    std::string model;
    std::string format;
    std::string suite;
    std::string algorithm = "near-optimal";
    uint64_t seed = 0;
    std::string out;
};

int do_prioritize(const PrioritizeOpts& opts) {
    const fs::path dir = resolve_out_dir(opts.out);
    fs::create_directories(dir);

    Manifest man;
    man.started = now_utc_iso();
    man.command = "prioritize";
    man.seed = opts.seed;

    const fs::path model_path = fs::absolute(opts.model);
    const fs::path suite_path = fs::absolute(opts.suite);
    const std::string format = opts.format.empty() ? sniff_format(model_path) : opts.format;
    const FeatureModel fm = load_model(model_path, format);
    const auto suite = products_from_csv(fm, read_file(suite_path));

    PrioritizedSuite ordered;
    if (opts.algorithm == "greedy")
        ordered = greedy_prioritize(suite);
    else if (opts.algorithm == "near-optimal")
        ordered = near_optimal_prioritize(suite);
    else if (opts.algorithm == "random")
        ordered = random_prioritize(suite, opts.seed);
    else
        throw UsageError("unknown algorithm: " + opts.algorithm);

    atomic_write_file(dir / "products.csv", products_to_csv(fm, ordered.products));
    man.outputs.push_back("products.csv");
    man.args = {"--model", model_path.string(), "--format", format,
                "--suite", suite_path.string(),
                "--algorithm", opts.algorithm,
                "--seed", std::to_string(opts.seed)};
    man.parameters = {{"model", model_path.string()},
                      {"format", format},
                      {"suite", suite_path.string()},
                      {"algorithm", opts.algorithm},
                      {"seed", opts.seed},
                      {"products", ordered.products.size()}};
    write_manifest(dir, man);
    std::cout << "wrote " << (dir / "products.csv").string() << " ("
              << ordered.products.size() << " products, " << opts.algorithm
              << " order)\n";
    return exit_code::ok;
}

// ---- coverage ---------------------------------------------------------------

struct CoverageOpts {
    std::string model;
    std::string format;
    std::string suite;
    int t = 2;
    std::string mode = "exact";
    uint64_t samples = 10000;
    uint64_t seed = 0;
    bool curve = false;
    std::string estimator = "rejection";
    uint64_t max_checks = CoverageBudget{}.max_checks;
    std::string out;
};

int do_coverage(const CoverageOpts& opts) {
    const fs::path dir = resolve_out_dir(opts.out);
    fs::create_directories(dir);

    Manifest man;
    man.started = now_utc_iso();
    man.command = "coverage";
    man.seed = opts.seed;

    const fs::path model_path = fs::absolute(opts.model);
    const fs::path suite_path = fs::absolute(opts.suite);
    const std::string format = opts.format.empty() ? sniff_format(model_path) : opts.format;
    const FeatureModel fm = load_model(model_path, format);
    const auto suite = products_from_csv(fm, read_file(suite_path));
    if (suite.empty())
        throw UsageError("suite " + suite_path.string() + " contains no products");

    const CoverageBudget budget{opts.max_checks};
    const bool exact = opts.mode == "exact";
    if (!exact && opts.mode != "sampled")
        throw UsageError("unknown mode: " + opts.mode);
    const CoverageEstimator estimator = opts.estimator == "covered"
                                            ? CoverageEstimator::covered_sets
                                            : CoverageEstimator::rejection;

    CoverageReport report;
    if (exact)
        report = exact_coverage(fm, suite, opts.t, budget);
    else
        report = estimate_coverage(fm, suite, opts.t, opts.samples, opts.seed,
                                   estimator, budget);

    ordered_json doc = ordered_json::parse(report.to_json());
    if (opts.curve) {
        const auto curve = coverage_curve(fm, suite, opts.t,
                                          exact ? CoverageMethod::exact
                                                : CoverageMethod::sampled,
                                          opts.samples, opts.seed, budget);
        std::string curve_csv = "prefix,coverage\n";
        for (size_t k = 0; k < curve.size(); ++k)
            curve_csv += std::to_string(k + 1) + "," + format_double(curve[k]) + "\n";
        atomic_write_file(dir / "curve.csv", curve_csv);
        man.outputs.push_back("curve.csv");
        doc["auc"] = area_under_curve(curve);
    }
    atomic_write_file(dir / "report.json", doc.dump(2) + "\n");
    atomic_write_file(dir / "report.csv",
                      CoverageReport::csv_header() + "\n" + report.to_csv_row() + "\n");
    man.outputs.insert(man.outputs.begin(), {"report.json", "report.csv"});

    man.args = {"--model", model_path.string(), "--format", format,
                "--suite", suite_path.string(),
                "--t", std::to_string(opts.t),
                "--mode", opts.mode,
                "--samples", std::to_string(opts.samples),
                "--seed", std::to_string(opts.seed),
                "--estimator", opts.estimator,
                "--max-checks", std::to_string(opts.max_checks)};
    if (opts.curve)
        man.args.push_back("--curve");
    man.parameters = {{"model", model_path.string()},
                      {"suite", suite_path.string()},
                      {"t", opts.t},
                      {"mode", opts.mode},
                      {"samples", opts.samples},
                      {"seed", opts.seed},
                      {"estimator", opts.estimator},
                      {"coverage", report.coverage}};
    write_manifest(dir, man);

    std::cout << "coverage=" << format_double(report.coverage) << " ("
              << (exact ? "exact" : "sampled") << ", covered "
              << format_double(report.covered) << " of "
              << format_double(report.total_valid) << ")\n";
    return exit_code::ok;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateOpts {
    std::string models_dir;
    std::string random_models; // N,SIZE,SEED
    double density = 0.2;
    std::string t_list = "2";
    std::string strategies = "search,unpredictable";
    int products = 10;
    std::optional<uint64_t> iterations;
    std::optional<double> budget_seconds;
    int repeats = 1;
    std::string mode = "exact";
    uint64_t samples = 10000;
    uint64_t seed = 0;
    int jobs = 1;
    uint64_t max_checks = CoverageBudget{}.max_checks;
    std::string out;
};

struct EvalCell {
    std::string model_name;
    const FeatureModel* fm;
    size_t model_index;
    std::string strategy;
};

struct EvalRow {
    std::string model_name;
    int features = 0;
    std::string strategy;
    int t = 0;
    int repeats = 0;
    std::string seeds;
    double coverage_mean = 0, coverage_std = 0;
    double fitness_mean = 0;
    double auc_random = 0, auc_greedy = 0, auc_near_optimal = 0;
    double runtime_ms = 0;
};

int do_evaluate(const EvaluateOpts& opts) {
    const fs::path dir = resolve_out_dir(opts.out);
    fs::create_directories(dir);

    Manifest man;
    man.started = now_utc_iso();
    man.command = "evaluate";
    man.seed = opts.seed;
    man.deterministic = !opts.budget_seconds.has_value();

    // assemble the model set
    std::vector<std::pair<std::string, FeatureModel>> models;
    if (!opts.models_dir.empty()) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(opts.models_dir)) {
            if (!entry.is_regular_file())
                continue;
            const std::string ext = entry.path().extension().string();
            if (ext == ".cnf" || ext == ".dimacs" || ext == ".json" || ext == ".tree")
                files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            models.emplace_back(f.filename().string(), load_model(f, ""));
    } else if (!opts.random_models.empty()) {
        const auto parts = split_list(opts.random_models);
        if (parts.size() != 3)
            throw UsageError("--random-models expects N,SIZE,SEED");
        const int count = std::stoi(parts[0]);
        const int size = std::stoi(parts[1]);
        const uint64_t base = std::stoull(parts[2]);
        for (int i = 0; i < count; ++i) {
            models.emplace_back("random-" + std::to_string(size) + "-" + std::to_string(i),
                                generate_random_model(size, opts.density, base + uint64_t(i)));
        }
    }
    if (models.empty())
        throw UsageError("no models to evaluate");

    std::vector<int> t_values;
    for (const auto& s : split_list(opts.t_list))
        t_values.push_back(std::stoi(s));
    const auto strategies = split_list(opts.strategies);
    if (t_values.empty() || strategies.empty())
        throw UsageError("--t and --strategies must be non-empty");
    for (const auto& s : strategies)
        if (s != "search" && s != "unpredictable")
            throw UsageError("unknown strategy: " + s);
    const bool exact = opts.mode == "exact";
    if (!exact && opts.mode != "sampled")
        throw UsageError("unknown mode: " + opts.mode);
    const uint64_t iterations =
        opts.iterations ? *opts.iterations : (opts.budget_seconds ? 0 : 2000);
    const CoverageBudget budget{opts.max_checks};
    const bool wall_mode = opts.budget_seconds.has_value();

    std::vector<EvalCell> cells;
    for (size_t mi = 0; mi < models.size(); ++mi)
        for (const auto& strategy : strategies)
            cells.push_back({models[mi].first, &models[mi].second, mi, strategy});

    std::vector<std::vector<EvalRow>> cell_rows(cells.size());
    std::atomic<size_t> next_cell{0};

    auto run_cell = [&](size_t ci) {
        const EvalCell& cell = cells[ci];
        const FeatureModel& fm = *cell.fm;
        using clock = std::chrono::steady_clock;
        const auto cell_start = clock::now();

        std::vector<std::vector<double>> coverage(t_values.size());
        std::vector<std::vector<double>> auc_random(t_values.size()),
            auc_greedy(t_values.size()), auc_near(t_values.size());
        std::vector<double> fitness_vals;
        std::string seeds;
        for (int r = 0; r < opts.repeats; ++r) {
            // paired across strategies: same seed per (model, repeat)
            const uint64_t seed =
                derive_seed(opts.seed, cell.model_index * 10007 + uint64_t(r));
            seeds += (r ? ";" : "") + std::to_string(seed);

            std::vector<Product> suite;
            if (cell.strategy == "search") {
                SearchConfig cfg;
                cfg.suite_size = opts.products;
                cfg.seed = seed;
                if (opts.budget_seconds)
                    cfg.budget_seconds = opts.budget_seconds;
                else
                    cfg.max_iterations = iterations;
                suite = search_generate(fm, cfg).suite.products;
            } else {
                suite = unpredictable_generate(fm, opts.products, seed);
            }
            fitness_vals.push_back(fitness(suite));

            for (size_t ti = 0; ti < t_values.size(); ++ti) {
                const int t = t_values[ti];
                const auto mode = exact ? CoverageMethod::exact : CoverageMethod::sampled;
                if (exact) {
                    coverage[ti].push_back(
                        exact_coverage(fm, suite, t, budget).coverage);
                } else {
                    coverage[ti].push_back(
                        estimate_coverage(fm, suite, t, opts.samples,
                                          derive_seed(seed, 0xc0f), CoverageEstimator::rejection,
                                          budget)
                            .coverage);
                }
                // prioritization quality on this suite
                double rnd = 0;
                for (uint64_t ps = 0; ps < 10; ++ps) {
                    const auto perm = random_prioritize(suite, derive_seed(seed, 100 + ps));
                    rnd += area_under_curve(coverage_curve(fm, perm.products, t, mode,
                                                           opts.samples,
                                                           derive_seed(seed, 0xcc), budget));
                }
                auc_random[ti].push_back(rnd / 10.0);
                auc_greedy[ti].push_back(area_under_curve(
                    coverage_curve(fm, greedy_prioritize(suite).products, t, mode,
                                   opts.samples, derive_seed(seed, 0xcc), budget)));
                auc_near[ti].push_back(area_under_curve(
                    coverage_curve(fm, near_optimal_prioritize(suite).products, t, mode,
                                   opts.samples, derive_seed(seed, 0xcc), budget)));
            }
        }
        const double runtime =
            wall_mode ? std::chrono::duration<double, std::milli>(clock::now() -
                                                                  cell_start)
                            .count()
                      : 0.0;
        for (size_t ti = 0; ti < t_values.size(); ++ti) {
            EvalRow row;
            row.model_name = cell.model_name;
            row.features = fm.feature_count();
            row.strategy = cell.strategy;
            row.t = t_values[ti];
            row.repeats = opts.repeats;
            row.seeds = seeds;
            row.coverage_mean = mean_of(coverage[ti]);
            row.coverage_std = stddev_of(coverage[ti]);
            row.fitness_mean = mean_of(fitness_vals);
            row.auc_random = mean_of(auc_random[ti]);
            row.auc_greedy = mean_of(auc_greedy[ti]);
            row.auc_near_optimal = mean_of(auc_near[ti]);
            row.runtime_ms = runtime;
            cell_rows[ci].push_back(row);
        }
    };

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (size_t ci = 0; ci < cells.size(); ++ci)
            run_cell(ci);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                while (true) {
                    const size_t ci = next_cell.fetch_add(1);
                    if (ci >= cells.size())
                        return;
                    run_cell(ci);
                }
            });
        }
        for (auto& th : workers)
            th.join();
    }

    std::vector<EvalRow> rows;
    for (const auto& group : cell_rows)
        rows.insert(rows.end(), group.begin(), group.end());
    std::sort(rows.begin(), rows.end(), [](const EvalRow& a, const EvalRow& b) {
        return std::tie(a.model_name, a.strategy, a.t) <
               std::tie(b.model_name, b.strategy, b.t);
    });

    std::string results =
        "model,features,strategy,t,repeats,seeds,coverage_mean,coverage_std,"
        "fitness_mean,auc_random,auc_greedy,auc_near_optimal,runtime_ms\n";
    for (const auto& r : rows) {
        results += csv_escape(r.model_name) + "," + std::to_string(r.features) + "," +
                   r.strategy + "," + std::to_string(r.t) + "," +
                   std::to_string(r.repeats) + "," + r.seeds + "," +
                   format_double(r.coverage_mean) + "," +
                   format_double(r.coverage_std) + "," +
                   format_double(r.fitness_mean) + "," +
                   format_double(r.auc_random) + "," +
                   format_double(r.auc_greedy) + "," +
                   format_double(r.auc_near_optimal) + "," +
                   format_double(r.runtime_ms) + "\n";
    }
    atomic_write_file(dir / "results.csv", results);

    std::string summary =
        "t,mean_coverage_search,mean_coverage_unpredictable,search_ge_unpredictable,"
        "mean_auc_random,mean_auc_greedy,mean_auc_near_optimal,auc_ordering_ok\n";
    for (int t : t_values) {
        std::vector<double> cov_search, cov_unpred, a_rnd, a_grd, a_near;
        for (const auto& r : rows) {
            if (r.t != t)
                continue;
            (r.strategy == "search" ? cov_search : cov_unpred).push_back(r.coverage_mean);
            a_rnd.push_back(r.auc_random);
            a_grd.push_back(r.auc_greedy);
            a_near.push_back(r.auc_near_optimal);
        }
        const double ms = mean_of(cov_search), mu = mean_of(cov_unpred);
        const double mr = mean_of(a_rnd), mg = mean_of(a_grd), mn = mean_of(a_near);
        const bool both = !cov_search.empty() && !cov_unpred.empty();
        summary += std::to_string(t) + "," + format_double(ms) + "," +
                   format_double(mu) + "," + (both ? (ms >= mu ? "1" : "0") : "") +
                   "," + format_double(mr) + "," + format_double(mg) + "," +
                   format_double(mn) + "," +
                   ((mr <= mg && mg <= mn) ? "1" : "0") + "\n";
    }
    atomic_write_file(dir / "summary.csv", summary);

    man.outputs = {"results.csv", "summary.csv"};
    man.args = {"--t", opts.t_list, "--strategies", opts.strategies,
                "--products", std::to_string(opts.products),
                "--repeats", std::to_string(opts.repeats),
                "--mode", opts.mode,
                "--samples", std::to_string(opts.samples),
                "--density", format_double(opts.density),
                "--seed", std::to_string(opts.seed),
                "--jobs", std::to_string(opts.jobs),
                "--max-checks", std::to_string(opts.max_checks)};
    if (!opts.models_dir.empty()) {
        man.args.push_back("--models");
        man.args.push_back(fs::absolute(opts.models_dir).string());
    }
    if (!opts.random_models.empty()) {
        man.args.push_back("--random-models");
        man.args.push_back(opts.random_models);
    }
    if (opts.iterations) {
        man.args.push_back("--iterations");
        man.args.push_back(std::to_string(*opts.iterations));
    }
    if (opts.budget_seconds) {
        man.args.push_back("--budget-seconds");
        man.args.push_back(format_double(*opts.budget_seconds));
    }
    man.parameters = {{"models", models.size()},
                      {"strategies", opts.strategies},
                      {"t", opts.t_list},
                      {"repeats", opts.repeats},
                      {"products", opts.products},
                      {"seed", opts.seed}};
    write_manifest(dir, man);

    std::cout << "wrote " << (dir / "results.csv").string() << " (" << rows.size()
              << " rows over " << models.size() << " models)\n";
    return exit_code::ok;
}

// ---- rerun ------------------------------------------------------------------

int do_rerun(const std::string& manifest_path, const std::string& out) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("cannot parse manifest: " + std::string(e.what()));
    }
    if (!doc.contains("command") || !doc.contains("args"))
        throw UsageError("manifest lacks command/args");
    std::vector<std::string> argv_s;
    argv_s.push_back("spltest");
    argv_s.push_back(doc["command"].get<std::string>());
    for (const auto& a : doc["args"])
        argv_s.push_back(a.get<std::string>());
    if (!out.empty()) {
        argv_s.push_back("--out");
        argv_s.push_back(out);
    }
    std::vector<const char*> argv;
    for (const auto& s : argv_s)
        argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"similarity-driven t-wise test suite generation, prioritization "
                 "and coverage measurement for feature models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GenerateOpts gen;
    auto* cmd_gen = app.add_subcommand("generate",
                                       "generate a prioritized product suite");
    cmd_gen->add_option("--model", gen.model, "model file")->required();
    cmd_gen->add_option("--format", gen.format, "dimacs|native|tree (default: by extension)")
        ->check(CLI::IsMember({"dimacs", "native", "tree"}));
    cmd_gen->add_option("--products", gen.products, "suite size m")->required();
    cmd_gen->add_option("--strategy", gen.strategy, "search|unpredictable")
        ->check(CLI::IsMember({"search", "unpredictable"}));
    cmd_gen->add_option("--budget-seconds", gen.budget_seconds,
                        "wall-clock budget (run is not reproducible)");
    cmd_gen->add_option("--iterations", gen.iterations, "iteration cap (reproducible)");
    cmd_gen->add_option("--prioritizer", gen.prioritizer, "greedy|near-optimal")
        ->check(CLI::IsMember({"greedy", "near-optimal"}));
    cmd_gen->add_option("--seed", gen.seed, "random seed");
    cmd_gen->add_option("--out", gen.out, "output directory");

    PrioritizeOpts pri;
    auto* cmd_pri = app.add_subcommand("prioritize", "order an existing suite");
    cmd_pri->add_option("--model", pri.model, "model file")->required();
    cmd_pri->add_option("--format", pri.format, "dimacs|native|tree")
        ->check(CLI::IsMember({"dimacs", "native", "tree"}));
    cmd_pri->add_option("--suite", pri.suite, "products.csv to reorder")->required();
    cmd_pri->add_option("--algorithm", pri.algorithm, "greedy|near-optimal|random")
        ->check(CLI::IsMember({"greedy", "near-optimal", "random"}));
    cmd_pri->add_option("--seed", pri.seed, "seed for --algorithm random");
    cmd_pri->add_option("--out", pri.out, "output directory");

    CoverageOpts cov;
    auto* cmd_cov = app.add_subcommand("coverage", "measure t-wise coverage of a suite");
    cmd_cov->add_option("--model", cov.model, "model file")->required();
    cmd_cov->add_option("--format", cov.format, "dimacs|native|tree")
        ->check(CLI::IsMember({"dimacs", "native", "tree"}));
    cmd_cov->add_option("--suite", cov.suite, "products.csv to measure")->required();
    cmd_cov->add_option("--t", cov.t, "interaction strength")->required();
    cmd_cov->add_option("--mode", cov.mode, "exact|sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    cmd_cov->add_option("--samples", cov.samples, "sample size (sampled mode)");
    cmd_cov->add_option("--seed", cov.seed, "sampling seed");
    cmd_cov->add_flag("--curve", cov.curve, "also write the per-prefix coverage curve");
    cmd_cov->add_option("--estimator", cov.estimator,
                        "rejection|covered (sampled mode estimator)")
        ->check(CLI::IsMember({"rejection", "covered"}));
    cmd_cov->add_option("--max-checks", cov.max_checks, "exact enumeration budget");
    cmd_cov->add_option("--out", cov.out, "output directory");

    EvaluateOpts ev;
    auto* cmd_ev = app.add_subcommand("evaluate",
                                      "compare strategies and prioritizers over a model set");
    cmd_ev->add_option("--models", ev.models_dir, "directory of model files");
    cmd_ev->add_option("--random-models", ev.random_models, "N,SIZE,SEED synthetic models");
    cmd_ev->add_option("--density", ev.density, "clause density for --random-models");
    cmd_ev->add_option("--t", ev.t_list, "comma-separated strengths (default 2)");
    cmd_ev->add_option("--strategies", ev.strategies, "subset of search,unpredictable");
    cmd_ev->add_option("--products", ev.products, "suite size per run");
    cmd_ev->add_option("--iterations", ev.iterations, "search iteration cap");
    cmd_ev->add_option("--budget-seconds", ev.budget_seconds, "search wall-clock budget");
    cmd_ev->add_option("--repeats", ev.repeats, "repeats per model/strategy");
    cmd_ev->add_option("--mode", ev.mode, "exact|sampled coverage")
        ->check(CLI::IsMember({"exact", "sampled"}));
    cmd_ev->add_option("--samples", ev.samples, "sample size (sampled mode)");
    cmd_ev->add_option("--seed", ev.seed, "base seed");
    cmd_ev->add_option("--jobs", ev.jobs, "parallel worker threads");
    cmd_ev->add_option("--max-checks", ev.max_checks, "exact enumeration budget");
    cmd_ev->add_option("--out", ev.out, "output directory");

    std::string rerun_manifest, rerun_out;
    auto* cmd_rerun = app.add_subcommand("rerun", "repeat a run from its manifest");
    cmd_rerun->add_option("--manifest", rerun_manifest, "manifest.json of a previous run")
        ->required();
    cmd_rerun->add_option("--out", rerun_out, "output directory");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::usage;
    }

    try {
        if (cmd_gen->parsed())
            return do_generate(gen);
        if (cmd_pri->parsed())
            return do_prioritize(pri);
        if (cmd_cov->parsed())
            return do_coverage(cov);
        if (cmd_ev->parsed())
            return do_evaluate(ev);
        if (cmd_rerun->parsed())
            return do_rerun(rerun_manifest, rerun_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::model_parse;
    } catch (const InconsistentModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::inconsistent;
    } catch (const SuiteMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::suite_mismatch;
    } catch (const EnumerationBudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (cmd_cov->parsed()) {
            std::cerr << "try: spltest coverage --model " << cov.model << " --suite "
                      << cov.suite << " --t " << cov.t
                      << " --mode sampled --samples 10000 --seed " << cov.seed << "\n";
        }
        return exit_code::budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::failure;
    }
    return exit_code::usage;
}

} // namespace spltest
