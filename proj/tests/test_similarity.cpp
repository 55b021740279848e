#include "spltest/feature_model.hpp"
#include "spltest/random.hpp"
#include "spltest/similarity.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace spltest;

namespace {

// the worked 3-product, 4-feature example
const Product kP1({true, true, true, false});
const Product kP2({true, true, false, true});
const Product kP3({true, false, true, false});

// independent route: Jaccard over explicit signed-literal sets
double set_based_jaccard(const Product& p, const Product& q) {
    std::set<int> a, b;
    for (int i = 1; i <= p.size(); ++i) {
        a.insert(p.selected(i) ? i : -i);
        b.insert(q.selected(i) ? i : -i);
    }
    std::set<int> inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(inter, inter.begin()));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::inserter(uni, uni.begin()));
    return 1.0 - double(inter.size()) / double(uni.size());
}

} // namespace

TEST_CASE("jaccard distance on the worked example") {
    CHECK(jaccard_distance(kP1, kP2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(jaccard_distance(kP1, kP3) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(jaccard_distance(kP2, kP3) == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("jaccard distance identities") {
    CHECK(jaccard_distance(kP1, kP1) == 0.0);
    CHECK(jaccard_distance(kP1, kP1.complement()) == 1.0);
    CHECK(jaccard_distance(kP2, kP2.complement()) == 1.0);
}

TEST_CASE("jaccard distance errors") {
    CHECK_THROWS_AS(jaccard_distance(kP1, Product({true})), std::invalid_argument);
    CHECK_THROWS_AS(jaccard_distance(Product(std::vector<bool>{}),
                                     Product(std::vector<bool>{})),
                    std::invalid_argument);
}

TEST_CASE("closed form equals set-based Jaccard on random pairs") {
    RandomSource rng(7777);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + int(rng.next_below(16));
        std::vector<bool> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[static_cast<size_t>(i)] = rng.next_bool();
            b[static_cast<size_t>(i)] = rng.next_bool();
        }
        const Product p(a), q(b);
        CHECK(jaccard_distance(p, q) ==
              doctest::Approx(set_based_jaccard(p, q)).epsilon(1e-12));
        // symmetry and range
        CHECK(jaccard_distance(p, q) == jaccard_distance(q, p));
        CHECK(jaccard_distance(p, q) >= 0.0);
        CHECK(jaccard_distance(p, q) <= 1.0);
        CHECK((jaccard_distance(p, q) == 0.0) == (p == q));
    }
}

TEST_CASE("fitness of the worked example") {
    const std::vector<Product> suite{kP1, kP2, kP3};
    const double expected = 2.0 / 3.0 + 0.4 + 6.0 / 7.0; // about 1.93
    CHECK(fitness(suite) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(fitness(suite) == doctest::Approx(1.93).epsilon(0.005));
}

TEST_CASE("fitness degenerate cases") {
    CHECK(fitness({}) == 0.0);
    const std::vector<Product> one{kP1};
    CHECK(fitness(one) == 0.0);
    const std::vector<Product> copies{kP1, kP1, kP1, kP1};
    CHECK(fitness(copies) == 0.0);
}

TEST_CASE("fitness is permutation invariant") {
    std::vector<Product> suite{kP1, kP2, kP3, kP1.complement()};
    const double base = fitness(suite);
    std::sort(suite.begin(), suite.end(),
              [](const Product& a, const Product& b) { return a.hash() < b.hash(); });
    CHECK(fitness(suite) == doctest::Approx(base).epsilon(1e-12));
    std::reverse(suite.begin(), suite.end());
    CHECK(fitness(suite) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("fitness cost contract: exactly m(m-1)/2 distance evaluations") {
    RandomSource rng(1);
    std::vector<Product> suite;
    for (int i = 0; i < 13; ++i) {
        std::vector<bool> signs(6);
        for (int k = 0; k < 6; ++k)
            signs[static_cast<size_t>(k)] = rng.next_bool();
        suite.emplace_back(signs);
    }
    reset_jaccard_eval_count();
    (void)fitness(suite);
    CHECK(jaccard_eval_count() == 13 * 12 / 2);
}

TEST_CASE("distance matrix") {
    const std::vector<Product> one{kP1};
    const auto m1 = distance_matrix(one);
    CHECK(m1.size() == 1);
    CHECK(m1.at(0, 0) == 0.0);

    const std::vector<Product> suite{kP1, kP2, kP3};
    const auto m = distance_matrix(suite);
    CHECK(m.at(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(m.at(0, 2) == doctest::Approx(2.0 / 5.0).epsilon(1e-9));
    CHECK(m.at(1, 2) == doctest::Approx(6.0 / 7.0).epsilon(1e-9));
    for (size_t i = 0; i < 3; ++i) {
        CHECK(m.at(i, i) == 0.0);
        for (size_t j = 0; j < 3; ++j)
            CHECK(m.at(i, j) == m.at(j, i));
    }
    CHECK(m.sum() / 2.0 == doctest::Approx(fitness(suite)).epsilon(1e-9));
}

TEST_CASE("matrix halves to fitness on random suites") {
    RandomSource rng(909);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + int(rng.next_below(10));
        const int m = 2 + int(rng.next_below(8));
        std::vector<Product> suite;
        for (int i = 0; i < m; ++i) {
            std::vector<bool> signs(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k)
                signs[static_cast<size_t>(k)] = rng.next_bool();
            suite.emplace_back(signs);
        }
        CHECK(distance_matrix(suite).sum() / 2.0 ==
              doctest::Approx(fitness(suite)).epsilon(1e-9));
    }
}
