#include "spltest/errors.hpp"
#include "spltest/feature_model.hpp"
#include "spltest/sat.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <set>
#include <unordered_set>

using namespace spltest;

TEST_CASE("solve: basics") {
    const FeatureModel fm({"a", "b", "c"}, {});
    const std::vector<int> assume{1};
    const auto p = solve(fm, assume, 42);
    REQUIRE(p.has_value());
    CHECK(p->selected(1));
    CHECK(is_valid_product(fm, *p));

    const FeatureModel inconsistent({"a"}, {{1}, {-1}});
    CHECK_FALSE(solve(inconsistent, {}, 42).has_value());
}

TEST_CASE("solve: contradictory assumptions are a precondition error, not UNSAT") {
    const FeatureModel fm({"a", "b"}, {});
    const std::vector<int> bad{1, -1};
    CHECK_THROWS_AS(solve(fm, bad, 0), std::invalid_argument);
    const std::vector<int> oor{3};
    CHECK_THROWS_AS(solve(fm, oor, 0), std::invalid_argument);
}

TEST_CASE("solve: agrees with brute force on random models") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 2 + int(seed % 11); // up to n = 12
        const auto fm = generate_random_model(n, 0.6, 7000 + seed);
        bool brute_sat = false;
        for (uint32_t mask = 0; mask < (uint32_t{1} << n) && !brute_sat; ++mask)
            brute_sat = oracle::assignment_satisfies(fm, mask);
        const auto got = solve(fm, {}, seed);
        CHECK(got.has_value() == brute_sat);
        if (got)
            CHECK(is_valid_product(fm, *got));
    }
}

TEST_CASE("solve: UNSAT under assumptions detected exhaustively") {
    // force UNSAT through assumptions on a constrained model
    const FeatureModel fm({"a", "b"}, {{-1, -2}});
    const std::vector<int> assume{1, 2};
    CHECK_FALSE(solve(fm, assume, 5).has_value());
}

TEST_CASE("is_valid_tset: examples") {
    const FeatureModel fm2({"a", "b"}, {});
    CHECK(is_valid_tset(fm2, TSet::canonical({1, 2}, 2)));
    CHECK(is_valid_tset(fm2, TSet::canonical({1, -2}, 2)));
    CHECK(is_valid_tset(fm2, TSet::canonical({-1, 2}, 2)));
    CHECK(is_valid_tset(fm2, TSet::canonical({-1, -2}, 2)));

    const FeatureModel excludes({"a", "b"}, {{-1, -2}});
    CHECK_FALSE(is_valid_tset(excludes, TSet::canonical({1, 2}, 2)));
    CHECK(is_valid_tset(excludes, TSet::canonical({1, -2}, 2)));
    CHECK(is_valid_tset(excludes, TSet::canonical({-1, 2}, 2)));
    CHECK(is_valid_tset(excludes, TSet::canonical({-1, -2}, 2)));
}

TEST_CASE("is_valid_tset: matches product-enumeration oracle") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        const int n = 4 + int(seed % 7); // up to 10
        const auto fm = generate_random_model(n, 0.5, 4200 + seed);
        const auto products = oracle::enumerate_valid_products(fm);
        for (int f1 = 1; f1 <= n; ++f1) {
            for (int f2 = f1 + 1; f2 <= n; ++f2) {
                for (int signs = 0; signs < 4; ++signs) {
                    const int l1 = (signs & 1) ? -f1 : f1;
                    const int l2 = (signs & 2) ? -f2 : f2;
                    const auto ts = TSet::canonical({l1, l2}, n);
                    bool witnessed = false;
                    for (const auto& p : products)
                        witnessed |= covers(p, ts);
                    CHECK(is_valid_tset(fm, ts) == witnessed);
                }
            }
        }
    }
}

TEST_CASE("sampler: exhaustion and reinitialization on a 2-feature model") {
    const FeatureModel fm({"a", "b"}, {});
    SamplerSession session(fm, 99);
    std::set<std::pair<bool, bool>> seen;
    for (int i = 0; i < 4; ++i) {
        const auto p = session.next();
        seen.insert({p.selected(1), p.selected(2)});
    }
    CHECK(seen.size() == 4); // all products, each exactly once
    CHECK(session.reinitializations() == 0);
    const auto fifth = session.next(); // succeeds after reinitialization
    CHECK(is_valid_product(fm, fifth));
    CHECK(session.reinitializations() == 1);
    CHECK(session.emitted() == 5);
}

TEST_CASE("sampler: same seed, same sequence") {
    const auto fm = generate_random_model(12, 0.4, 5);
    SamplerSession a(fm, 31), b(fm, 31);
    for (int i = 0; i < 20; ++i)
        CHECK(a.next() == b.next());
}

TEST_CASE("sampler: single-product model always returns it") {
    const FeatureModel fm({"a", "b"}, {{1}, {2}});
    SamplerSession session(fm, 1);
    for (int i = 0; i < 5; ++i) {
        const auto p = session.next();
        CHECK(p.selected(1));
        CHECK(p.selected(2));
    }
}

TEST_CASE("sampler: inconsistent model rejected at session creation") {
    const FeatureModel fm({"a"}, {{1}, {-1}});
    CHECK_THROWS_AS(SamplerSession(fm, 0), InconsistentModelError);
}

TEST_CASE("sampler: emitted products are sound and cover the space at desk scale") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 3 + int(seed); // 3..12
        const auto fm = generate_random_model(n, 0.4, 900 + seed);
        const auto brute = oracle::enumerate_valid_products(fm);
        SamplerSession session(fm, seed);
        std::unordered_set<Product, ProductHash> emitted;
        for (size_t i = 0; i < brute.size(); ++i) {
            const auto p = session.next();
            CHECK(is_valid_product(fm, p));
            emitted.insert(p);
        }
        // one full exhaustion cycle covers exactly the valid-product set
        CHECK(emitted.size() == brute.size());
        CHECK(session.reinitializations() == 0);
    }
}

TEST_CASE("sampler: first product varies across seeds") {
    const FeatureModel fm({"a", "b", "c", "d"}, {});
    std::unordered_set<Product, ProductHash> firsts;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        SamplerSession session(fm, seed);
        firsts.insert(session.next());
    }
    CHECK(firsts.size() >= 2); // non-predictability at the very first draw
}

TEST_CASE("solver: blocking clauses and clearing") {
    const FeatureModel fm({"a", "b"}, {});
    Solver solver(fm, 3);
    for (int i = 0; i < 4; ++i) {
        const auto p = solver.solve();
        REQUIRE(p.has_value());
        solver.block(*p);
    }
    CHECK(solver.blocked_count() == 4);
    CHECK_FALSE(solver.solve().has_value());
    solver.clear_blocked();
    CHECK(solver.blocked_count() == 0);
    CHECK(solver.solve().has_value());
}
