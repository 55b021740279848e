#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spltest {

// A clause is a non-empty disjunction of signed 1-based feature indices:
// +i means "feature i selected", -i means "feature i unselected".
using Clause = std::vector<int>;

// A feature model: n named features plus CNF constraints over them.
// Immutable after construction; safe to share across threads.
class FeatureModel {
public:
    // Throws std::invalid_argument when a name is empty or duplicated, a
    // literal is zero or out of range, a clause is empty, or a clause
    // contains both +i and -i.
    FeatureModel(std::vector<std::string> features, std::vector<Clause> clauses);

    int feature_count() const { return static_cast<int>(features_.size()); }
    const std::vector<std::string>& features() const { return features_; }
    const std::string& feature_name(int index) const { return features_[index - 1]; }
    const std::vector<Clause>& clauses() const { return clauses_; }

private:
    std::vector<std::string> features_;
    std::vector<Clause> clauses_;
};

// A product: total assignment of every feature to selected/unselected.
// Bit-packed so that distance computations reduce to word operations.
// Immutable after construction.
class Product {
public:
    Product() = default;
    explicit Product(const std::vector<bool>& signs);

    int size() const { return n_; }

    // feature is 1-based
    bool selected(int feature) const {
        const int v = feature - 1;
        return (bits_[static_cast<size_t>(v) >> 6] >> (v & 63)) & 1u;
    }

    // Number of features on which the two products agree in polarity.
    // Throws std::invalid_argument on size mismatch.
    int agreement(const Product& other) const;

    Product complement() const;

    bool operator==(const Product& other) const = default;

    size_t hash() const;

private:
    int n_ = 0;
    std::vector<uint64_t> bits_;
};

struct ProductHash {
    size_t operator()(const Product& p) const { return p.hash(); }
};

// A t-set: t signed feature indices naming t distinct features, stored in
// canonical order (ascending feature index).
struct TSet {
    std::vector<int> literals;

    int strength() const { return static_cast<int>(literals.size()); }

    // Validates and canonicalizes. Throws std::invalid_argument when t is
    // outside [2, n], a literal is out of range, or a feature repeats.
    static TSet canonical(std::vector<int> literals, int feature_count);
};

// True iff p exhibits every literal of ts.
bool covers(const Product& p, const TSet& ts);

// ---- Parsing and serialization -------------------------------------------

// DIMACS CNF. Comment lines `c <i> <name>` (or `c i <i> <name>`) name
// variable i; unnamed variables get the synthetic name "f<i>".
// Throws ParseError naming the offending line.
FeatureModel parse_dimacs(const std::string& text);

// Native model format: a JSON object {"features":[...],"clauses":[[...]]}.
// Throws ParseError on syntax or semantic errors.
FeatureModel parse_native(const std::string& text);

// Canonical serialization of the native format: features in index order,
// clause literals in input order, compact whitespace.
std::string serialize_native(const FeatureModel& fm);

// ---- Random model synthesis -----------------------------------------------

// Synthesizes a consistent random model with n features and about
// clause_density * n clauses of 2 or 3 literals each. Deterministic in
// (n, clause_density, seed). Clauses that would make the model inconsistent
// are dropped and regenerated; throws Error after bounded retries.
FeatureModel generate_random_model(int n, double clause_density, uint64_t seed);

// ---- Evaluation -------------------------------------------------------------

// True iff every clause of fm has at least one literal satisfied by p.
// Throws std::invalid_argument when p is not total over fm's features.
bool is_valid_product(const FeatureModel& fm, const Product& p);

} // namespace spltest
