#include "spltest/feature_model.hpp"
#include "spltest/product_io.hpp"

#include "cli_driver.hpp"

#include <doctest.h>

#include <chrono>

using namespace cli_driver;

namespace {

// unconstrained 4-feature model plus the worked-example suite
const char* kModel4 = "p cnf 4 0\n";
const char* kSuite4 =
    "f1,f2,f3,f4\n"
    "1,1,1,0\n"
    "1,1,0,1\n"
    "1,0,1,0\n";

} // namespace

TEST_CASE("cli: help and bad flags") {
    TempDir dir("help");
    CHECK(run("--help", dir.path()).exit_code == 0);
    CHECK(run("generate --help", dir.path()).exit_code == 0);
    CHECK(run("frobnicate", dir.path()).exit_code == 2);
    CHECK(run("generate --no-such-flag", dir.path()).exit_code == 2);
    CHECK(run("generate --model missing.cnf", dir.path()).exit_code == 2); // --products missing
}

TEST_CASE("cli: generate unpredictable on a single-product model") {
    TempDir dir("gen1");
    spit(dir.path() / "m.cnf", "p cnf 2 2\n1 0\n2 0\n");
    const auto out = dir.path() / "out";
    const auto r = run("generate --model " + (dir.path() / "m.cnf").string() +
                           " --products 1 --strategy unpredictable --seed 4 --out " +
                           out.string(),
                       dir.path());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out / "products.csv") == "f1,f2\n1,1\n");
    CHECK(fs::exists(out / "manifest.json"));
    CHECK_FALSE(fs::exists(out / "trace.csv"));
}

TEST_CASE("cli: iteration-capped generate is byte-deterministic") {
    TempDir dir("gendet");
    spit(dir.path() / "m.cnf", "p cnf 12 1\n1 2 0\n");
    const std::string flags = "generate --model " + (dir.path() / "m.cnf").string() +
                              " --products 4 --strategy search --iterations 150 "
                              "--seed 9 --out ";
    const auto a = dir.path() / "a";
    const auto b = dir.path() / "b";
    CHECK(run(flags + a.string(), dir.path()).exit_code == 0);
    CHECK(run(flags + b.string(), dir.path()).exit_code == 0);
    CHECK(slurp(a / "products.csv") == slurp(b / "products.csv"));
    CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
    CHECK(!slurp(a / "trace.csv").empty());
}

TEST_CASE("cli: rerun from manifest reproduces outputs") {
    TempDir dir("rerun");
    spit(dir.path() / "m.cnf", "p cnf 10 1\n-1 -2 0\n");
    const auto a = dir.path() / "a";
    const auto b = dir.path() / "b";
    CHECK(run("generate --model " + (dir.path() / "m.cnf").string() +
                  " --products 3 --strategy search --iterations 80 --seed 2 --out " +
                  a.string(),
              dir.path())
              .exit_code == 0);
    CHECK(run("rerun --manifest " + (a / "manifest.json").string() + " --out " +
                  b.string(),
              dir.path())
              .exit_code == 0);
    CHECK(slurp(a / "products.csv") == slurp(b / "products.csv"));
    CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
}

TEST_CASE("cli: prioritize") {
    TempDir dir("prio");
    spit(dir.path() / "m.cnf", kModel4);
    spit(dir.path() / "suite.csv", kSuite4);

    SUBCASE("greedy orders the worked example as P2, P3, P1") {
        const auto out = dir.path() / "out";
        const auto r = run("prioritize --model " + (dir.path() / "m.cnf").string() +
                               " --suite " + (dir.path() / "suite.csv").string() +
                               " --algorithm greedy --out " + out.string(),
                           dir.path());
        CHECK(r.exit_code == 0);
        CHECK(slurp(out / "products.csv") == "f1,f2,f3,f4\n"
                                             "1,1,0,1\n"
                                             "1,0,1,0\n"
                                             "1,1,1,0\n");
    }

    SUBCASE("single product is unchanged") {
        spit(dir.path() / "one.csv", "f1,f2,f3,f4\n1,0,1,0\n");
        const auto out = dir.path() / "out1";
        const auto r = run("prioritize --model " + (dir.path() / "m.cnf").string() +
                               " --suite " + (dir.path() / "one.csv").string() +
                               " --algorithm near-optimal --out " + out.string(),
                           dir.path());
        CHECK(r.exit_code == 0);
        CHECK(slurp(out / "products.csv") == "f1,f2,f3,f4\n1,0,1,0\n");
    }

    SUBCASE("random keeps the multiset and is seed-stable") {
        const auto out1 = dir.path() / "r1";
        const auto out2 = dir.path() / "r2";
        const std::string base = "prioritize --model " + (dir.path() / "m.cnf").string() +
                                 " --suite " + (dir.path() / "suite.csv").string() +
                                 " --algorithm random --seed 5 --out ";
        CHECK(run(base + out1.string(), dir.path()).exit_code == 0);
        CHECK(run(base + out2.string(), dir.path()).exit_code == 0);
        const auto text = slurp(out1 / "products.csv");
        CHECK(text == slurp(out2 / "products.csv"));
        // same rows as the input, possibly reordered
        for (const std::string row : {"1,1,1,0", "1,1,0,1", "1,0,1,0"})
            CHECK(text.find(row) != std::string::npos);
    }

    SUBCASE("suite/model mismatch exits 5") {
        spit(dir.path() / "bad.csv", "a,b\n1,0\n");
        const auto r = run("prioritize --model " + (dir.path() / "m.cnf").string() +
                               " --suite " + (dir.path() / "bad.csv").string() +
                               " --algorithm greedy --out " + (dir.path() / "x").string(),
                           dir.path());
        CHECK(r.exit_code == 5);
    }
}

TEST_CASE("cli: coverage") {
    TempDir dir("cov");
    spit(dir.path() / "m.cnf", "p cnf 3 0\n");
    // all 8 products of the unconstrained 3-feature model
    std::string full = "f1,f2,f3\n";
    for (int mask = 0; mask < 8; ++mask) {
        full += std::to_string(mask & 1) + "," + std::to_string((mask >> 1) & 1) +
                "," + std::to_string((mask >> 2) & 1) + "\n";
    }
    spit(dir.path() / "full.csv", full);

    SUBCASE("full suite reaches exact coverage 1.0") {
        const auto out = dir.path() / "out";
        const auto r = run("coverage --model " + (dir.path() / "m.cnf").string() +
                               " --suite " + (dir.path() / "full.csv").string() +
                               " --t 2 --mode exact --curve --out " + out.string(),
                           dir.path());
        CHECK(r.exit_code == 0);
        const auto report = slurp(out / "report.json");
        CHECK(report.find("\"coverage\": 1.0") != std::string::npos);
        CHECK(fs::exists(out / "report.csv"));
        const auto curve = slurp(out / "curve.csv");
        CHECK(curve.rfind("prefix,coverage\n", 0) == 0);
        CHECK(curve.find("\n8,1") != std::string::npos);
    }

    SUBCASE("empty suite is a usage error") {
        spit(dir.path() / "empty.csv", "f1,f2,f3\n");
        const auto r = run("coverage --model " + (dir.path() / "m.cnf").string() +
                               " --suite " + (dir.path() / "empty.csv").string() +
                               " --t 2 --out " + (dir.path() / "x").string(),
                           dir.path());
        CHECK(r.exit_code == 2);
    }

    SUBCASE("exact budget refusal exits 6 and suggests sampling") {
        const auto r = run("coverage --model " + (dir.path() / "m.cnf").string() +
                               " --suite " + (dir.path() / "full.csv").string() +
                               " --t 2 --mode exact --max-checks 3 --out " +
                               (dir.path() / "x").string(),
                           dir.path());
        CHECK(r.exit_code == 6);
        CHECK(r.err.find("--mode sampled") != std::string::npos);
    }

    SUBCASE("sampled mode is reproducible") {
        const auto o1 = dir.path() / "s1";
        const auto o2 = dir.path() / "s2";
        const std::string base = "coverage --model " + (dir.path() / "m.cnf").string() +
                                 " --suite " + (dir.path() / "full.csv").string() +
                                 " --t 2 --mode sampled --samples 500 --seed 12 --out ";
        CHECK(run(base + o1.string(), dir.path()).exit_code == 0);
        CHECK(run(base + o2.string(), dir.path()).exit_code == 0);
        CHECK(slurp(o1 / "report.json") == slurp(o2 / "report.json"));
    }

    SUBCASE("covered-sets estimator is wired up") {
        const auto out = dir.path() / "ce";
        const auto r = run("coverage --model " + (dir.path() / "m.cnf").string() +
                               " --suite " + (dir.path() / "full.csv").string() +
                               " --t 2 --mode sampled --samples 400 --seed 2 "
                               "--estimator covered --out " + out.string(),
                           dir.path());
        CHECK(r.exit_code == 0);
        CHECK(slurp(out / "report.json").find("\"method\": \"sampled\"") !=
              std::string::npos);
    }
}

TEST_CASE("cli: model error exit codes") {
    TempDir dir("err");
    spit(dir.path() / "broken.cnf", "p cnf 2 1\n1 -1 0\n");
    CHECK(run("generate --model " + (dir.path() / "broken.cnf").string() +
                  " --products 1 --strategy unpredictable --out " +
                  (dir.path() / "x").string(),
              dir.path())
              .exit_code == 3);

    spit(dir.path() / "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    CHECK(run("generate --model " + (dir.path() / "unsat.cnf").string() +
                  " --products 1 --strategy unpredictable --out " +
                  (dir.path() / "y").string(),
              dir.path())
              .exit_code == 4);

    // search without any budget is a usage error
    spit(dir.path() / "ok.cnf", "p cnf 2 0\n");
    CHECK(run("generate --model " + (dir.path() / "ok.cnf").string() +
                  " --products 2 --strategy search --out " + (dir.path() / "z").string(),
              dir.path())
              .exit_code == 2);
}

TEST_CASE("cli: native and tree formats are accepted") {
    TempDir dir("fmt");
    spit(dir.path() / "m.json", R"({"features":["left","right"],"clauses":[[1,2]]})");
    const auto out = dir.path() / "out";
    CHECK(run("generate --model " + (dir.path() / "m.json").string() +
                  " --products 2 --strategy unpredictable --seed 0 --out " + out.string(),
              dir.path())
              .exit_code == 0);
    CHECK(slurp(out / "products.csv").rfind("left,right\n", 0) == 0);

    spit(dir.path() / "m.tree", "root\n  m base\n  o extra\n");
    const auto out2 = dir.path() / "out2";
    CHECK(run("generate --model " + (dir.path() / "m.tree").string() +
                  " --products 2 --strategy unpredictable --seed 0 --out " + out2.string(),
              dir.path())
              .exit_code == 0);
    CHECK(slurp(out2 / "products.csv").rfind("root,base,extra\n", 0) == 0);
}

TEST_CASE("cli: products.csv round-trips between commands") {
    TempDir dir("round");
    spit(dir.path() / "m.cnf", "p cnf 6 1\n1 2 0\n");
    const auto gen = dir.path() / "gen";
    CHECK(run("generate --model " + (dir.path() / "m.cnf").string() +
                  " --products 4 --strategy search --iterations 60 --seed 3 --out " +
                  gen.string(),
              dir.path())
              .exit_code == 0);
    const auto cov = dir.path() / "cov";
    CHECK(run("coverage --model " + (dir.path() / "m.cnf").string() + " --suite " +
                  (gen / "products.csv").string() + " --t 2 --mode exact --out " +
                  cov.string(),
              dir.path())
              .exit_code == 0);
    CHECK(slurp(cov / "report.json").find("\"method\": \"exact\"") != std::string::npos);
}

TEST_CASE("cli: evaluate smoke") {
    TempDir dir("eval");
    const auto out = dir.path() / "out";
    const auto r = run("evaluate --random-models 1,8,3 --strategies unpredictable "
                       "--t 2 --products 3 --repeats 1 --iterations 50 --seed 6 --out " +
                           out.string(),
                       dir.path());
    CHECK(r.exit_code == 0);
    const auto results = slurp(out / "results.csv");
    // header plus exactly one data row
    CHECK(std::count(results.begin(), results.end(), '\n') == 2);
    const auto summary = slurp(out / "summary.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 2);
    CHECK(run("evaluate --t 2 --out " + (dir.path() / "none").string(), dir.path())
              .exit_code == 2); // no models
}

TEST_CASE("cli: evaluate is deterministic regardless of --jobs") {
    TempDir dir("jobs");
    const std::string base =
        "evaluate --random-models 3,10,4 --strategies search,unpredictable "
        "--t 2,3 --products 4 --repeats 2 --iterations 80 --seed 13 --jobs ";
    const auto j1 = dir.path() / "j1";
    const auto j2 = dir.path() / "j2";
    CHECK(run(base + "1 --out " + j1.string(), dir.path()).exit_code == 0);
    CHECK(run(base + "2 --out " + j2.string(), dir.path()).exit_code == 0);
    CHECK(slurp(j1 / "results.csv") == slurp(j2 / "results.csv"));
    CHECK(slurp(j1 / "summary.csv") == slurp(j2 / "summary.csv"));
    CHECK(!slurp(j1 / "results.csv").empty());
}

TEST_CASE("cli: wall-clock generate finishes within budget plus grace") {
    TempDir dir("budget");
    const auto fm = spltest::generate_random_model(200, 0.25, 17);
    spit(dir.path() / "m.json", spltest::serialize_native(fm));
    const auto out = dir.path() / "out";
    const auto start = std::chrono::steady_clock::now();
    const auto r = run("generate --model " + (dir.path() / "m.json").string() +
                           " --format native --products 20 --strategy search "
                           "--budget-seconds 2 --seed 1 --out " + out.string(),
                       dir.path());
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "products.csv"));
    CHECK(elapsed < 2.0 * 1.1 + 2.0); // budget + 10% + process overhead
}
