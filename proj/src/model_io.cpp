#include "spltest/errors.hpp"
#include "spltest/feature_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace spltest {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

bool parse_int(const std::string& s, long long& out) {
    if (s.empty())
        return false;
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size())
        return false;
    out = v;
    return true;
}

std::string join_from(const std::vector<std::string>& toks, size_t start) {
    std::string out;
    for (size_t i = start; i < toks.size(); ++i) {
        if (i > start)
            out += ' ';
        out += toks[i];
    }
    return out;
}

} // namespace

FeatureModel parse_dimacs(const std::string& text) {
    long long n = -1, m = -1;
    bool header_seen = false;
    std::map<long long, std::pair<std::string, int>> names; // index -> (name, line)
    std::vector<Clause> clauses;
    Clause current;
    int line_no = 0;

    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (toks[0] == "c") {
            // `c <i> <name>` or `c i <i> <name>` names variable i;
            // anything else is a plain comment.
            size_t at = 1;
            if (toks.size() >= 2 && toks[1] == "i")
                at = 2;
            long long idx;
            if (toks.size() >= at + 2 && parse_int(toks[at], idx)) {
                if (idx < 1)
                    throw ParseError(line_no, "variable index must be positive");
                names[idx] = {join_from(toks, at + 1), line_no};
            }
            continue;
        }
        if (toks[0] == "p") {
            if (header_seen)
                throw ParseError(line_no, "duplicate problem header");
            if (toks.size() != 4 || toks[1] != "cnf" ||
                !parse_int(toks[2], n) || !parse_int(toks[3], m) || n < 0 || m < 0)
                throw ParseError(line_no, "malformed header (expected `p cnf <vars> <clauses>`)");
            header_seen = true;
            continue;
        }
        if (!header_seen)
            throw ParseError(line_no, "clause data before the problem header");
        for (const auto& tok : toks) {
            long long lit;
            if (!parse_int(tok, lit))
                throw ParseError(line_no, "expected an integer literal, got `" + tok + "`");
            if (lit == 0) {
                if (current.empty())
                    throw ParseError(line_no, "empty clause");
                clauses.push_back(current);
                current.clear();
                continue;
            }
            if (std::llabs(lit) > n)
                throw ParseError(line_no, "literal out of range: " + tok);
            int l = static_cast<int>(lit);
            for (int prev : current) {
                if (prev == -l)
                    throw ParseError(line_no,
                                     "tautological clause (contains both +" +
                                         std::to_string(std::abs(l)) + " and -" +
                                         std::to_string(std::abs(l)) + ")");
            }
            current.push_back(l);
        }
    }
    if (!header_seen)
        throw ParseError(line_no, "missing problem header");
    if (!current.empty())
        throw ParseError(line_no, "unterminated clause (missing trailing 0)");
    if (static_cast<long long>(clauses.size()) != m)
        throw ParseError(line_no, "expected " + std::to_string(m) + " clauses, found " +
                                      std::to_string(clauses.size()));

    std::vector<std::string> features(static_cast<size_t>(n));
    for (long long i = 1; i <= n; ++i)
        features[static_cast<size_t>(i - 1)] = "f" + std::to_string(i);
    std::unordered_set<std::string> used;
    for (const auto& [idx, entry] : names) {
        if (idx > n)
            throw ParseError(entry.second, "variable index out of range: " + std::to_string(idx));
        features[static_cast<size_t>(idx - 1)] = entry.first;
    }
    for (long long i = 1; i <= n; ++i) {
        if (!used.insert(features[static_cast<size_t>(i - 1)]).second) {
            int at = names.count(i) ? names.at(i).second : 0;
            throw ParseError(at, "duplicate feature name: " + features[static_cast<size_t>(i - 1)]);
        }
    }
    try {
        return FeatureModel(std::move(features), std::move(clauses));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

FeatureModel parse_native(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError(0, "expected a JSON object with `features` and `clauses`");
    if (!doc.contains("features") || !doc["features"].is_array())
        throw ParseError(0, "missing or non-array `features`");
    if (!doc.contains("clauses") || !doc["clauses"].is_array())
        throw ParseError(0, "missing or non-array `clauses`");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "features" && key != "clauses")
            throw ParseError(0, "unexpected key: " + key);
    }

    std::vector<std::string> features;
    for (const auto& f : doc["features"]) {
        if (!f.is_string())
            throw ParseError(0, "feature names must be strings");
        features.push_back(f.get<std::string>());
    }
    std::vector<Clause> clauses;
    for (const auto& c : doc["clauses"]) {
        if (!c.is_array())
            throw ParseError(0, "each clause must be an array of integers");
        Clause clause;
        for (const auto& l : c) {
            if (!l.is_number_integer())
                throw ParseError(0, "clause literals must be integers");
            clause.push_back(l.get<int>());
        }
        clauses.push_back(std::move(clause));
    }
    try {
        return FeatureModel(std::move(features), std::move(clauses));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

std::string serialize_native(const FeatureModel& fm) {
    nlohmann::ordered_json doc;
    doc["features"] = fm.features();
    doc["clauses"] = fm.clauses();
    return doc.dump();
}

} // namespace spltest
