#include "spltest/sat.hpp"

#include "spltest/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace spltest {

namespace {

// internal encoding: variable v in [0, n); literal = 2v (positive) or 2v+1
inline int to_internal(int ext) {
    const int v = std::abs(ext) - 1;
    return (v << 1) | (ext < 0 ? 1 : 0);
}
inline int lit_var(int l) { return l >> 1; }
inline bool lit_negated(int l) { return l & 1; }

constexpr uint64_t kTSetCheckSeed = 0x5eed5eed5eed5eedull;

} // namespace

Solver::Solver(const FeatureModel& fm, uint64_t seed)
    : nvars_(fm.feature_count()),
      watches_(static_cast<size_t>(2 * fm.feature_count())),
      value_(static_cast<size_t>(fm.feature_count()), -1),
      free_pos_(static_cast<size_t>(fm.feature_count()), -1),
      rng_(seed) {
    std::vector<int32_t> lits;
    for (const Clause& clause : fm.clauses()) {
        lits.clear();
        for (int l : clause)
            lits.push_back(to_internal(l));
        if (lits.size() == 1)
            unit_lits_.push_back(lits[0]);
        else
            add_clause_internal(lits);
    }
    base_clause_count_ = clauses_.size();
    base_lit_count_ = lit_pool_.size();
    base_unit_count_ = unit_lits_.size();
}

void Solver::add_clause_internal(std::span<const int32_t> lits) {
    const uint32_t begin = static_cast<uint32_t>(lit_pool_.size());
    lit_pool_.insert(lit_pool_.end(), lits.begin(), lits.end());
    const uint32_t ci = static_cast<uint32_t>(clauses_.size());
    clauses_.push_back({begin, static_cast<uint32_t>(lits.size())});
    watches_[lit_pool_[begin]].push_back(ci);
    watches_[lit_pool_[begin + 1]].push_back(ci);
}

void Solver::rebuild_watches() {
    for (auto& wl : watches_)
        wl.clear();
    for (uint32_t ci = 0; ci < clauses_.size(); ++ci) {
        const ClauseRef& c = clauses_[ci];
        watches_[lit_pool_[c.begin]].push_back(ci);
        watches_[lit_pool_[c.begin + 1]].push_back(ci);
    }
}

bool Solver::enqueue(int lit) {
    const int v = lit_var(lit);
    const int8_t want = lit_negated(lit) ? 0 : 1;
    if (value_[v] != -1)
        return value_[v] == want;
    value_[v] = want;
    trail_.push_back(lit);
    // remove v from the free set
    const int pos = free_pos_[v];
    const int last = free_vars_.back();
    free_vars_[pos] = last;
    free_pos_[last] = pos;
    free_vars_.pop_back();
    free_pos_[v] = -1;
    return true;
}

bool Solver::propagate() {
    while (qhead_ < trail_.size()) {
        const int p = trail_[qhead_++];
        const int false_lit = p ^ 1;
        auto& wl = watches_[false_lit];
        size_t i = 0, keep = 0;
        while (i < wl.size()) {
            const uint32_t ci = wl[i];
            const ClauseRef& c = clauses_[ci];
            int32_t* lits = &lit_pool_[c.begin];
            if (lits[0] == false_lit)
                std::swap(lits[0], lits[1]);
            // lits[1] is the falsified watch now
            const int first = lits[0];
            const int fv = lit_var(first);
            if (value_[fv] == (lit_negated(first) ? 0 : 1)) {
                wl[keep++] = ci; // clause already satisfied
                ++i;
                continue;
            }
            bool moved = false;
            for (uint32_t k = 2; k < c.size; ++k) {
                const int cand = lits[k];
                const int cv = lit_var(cand);
                if (value_[cv] == -1 || value_[cv] == (lit_negated(cand) ? 0 : 1)) {
                    std::swap(lits[1], lits[k]);
                    watches_[lits[1]].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) {
                ++i; // watch left this list
                continue;
            }
            // unit under the current assignment, or conflicting
            wl[keep++] = ci;
            ++i;
            if (!enqueue(first)) {
                while (i < wl.size())
                    wl[keep++] = wl[i++];
                wl.resize(keep);
                return false;
            }
        }
        wl.resize(keep);
    }
    return true;
}

void Solver::backtrack_to(size_t trail_pos) {
    while (trail_.size() > trail_pos) {
        const int lit = trail_.back();
        trail_.pop_back();
        const int v = lit_var(lit);
        value_[v] = -1;
        free_pos_[v] = static_cast<int>(free_vars_.size());
        free_vars_.push_back(v);
    }
    qhead_ = trail_pos;
}

bool Solver::search(std::span<const int> assumptions) {
    // validate assumptions before touching any state
    std::vector<int8_t> mark(static_cast<size_t>(nvars_), 0);
    for (int a : assumptions) {
        if (a == 0 || std::abs(a) > nvars_)
            throw std::invalid_argument("assumption literal out of range: " +
                                        std::to_string(a));
        const int v = std::abs(a) - 1;
        const int8_t sign = a > 0 ? 1 : 2;
        if (mark[v] != 0 && mark[v] != sign)
            throw std::invalid_argument("contradictory assumptions on feature " +
                                        std::to_string(std::abs(a)));
        mark[v] = sign;
    }

    // reset
    trail_.clear();
    qhead_ = 0;
    decisions_.clear();
    std::fill(value_.begin(), value_.end(), int8_t{-1});
    free_vars_.resize(static_cast<size_t>(nvars_));
    for (int v = 0; v < nvars_; ++v) {
        free_vars_[v] = v;
        free_pos_[v] = v;
    }

    for (int lit : unit_lits_)
        if (!enqueue(lit))
            return false;
    for (int a : assumptions)
        if (!enqueue(to_internal(a)))
            return false;
    if (!propagate())
        return false;

    // Random-order DPLL has a heavy-tailed runtime on some instances;
    // geometric restarts cut the tail. The limit doubles per restart, so the
    // search eventually runs to completion and UNSAT stays decidable.
    const size_t root_pos = trail_.size();
    uint64_t conflicts = 0;
    uint64_t restart_limit = 128;

    while (!free_vars_.empty()) {
        const int v = free_vars_[rng_.next_below(free_vars_.size())];
        const int lit = (v << 1) | (rng_.next_bool() ? 0 : 1);
        decisions_.push_back({trail_.size(), lit, false});
        enqueue(lit);
        while (!propagate()) {
            if (++conflicts >= restart_limit) {
                backtrack_to(root_pos);
                decisions_.clear();
                conflicts = 0;
                if (restart_limit < (uint64_t{1} << 40))
                    restart_limit *= 2;
                break;
            }
            while (!decisions_.empty() && decisions_.back().flipped) {
                backtrack_to(decisions_.back().trail_pos);
                decisions_.pop_back();
            }
            if (decisions_.empty())
                return false;
            Decision& d = decisions_.back();
            backtrack_to(d.trail_pos);
            d.lit ^= 1;
            d.flipped = true;
            enqueue(d.lit);
        }
    }
    return true;
}

std::optional<Product> Solver::solve(std::span<const int> assumptions) {
    if (!search(assumptions))
        return std::nullopt;
    std::vector<bool> signs(static_cast<size_t>(nvars_));
    for (int v = 0; v < nvars_; ++v)
        signs[static_cast<size_t>(v)] = value_[v] == 1;
    return Product(signs);
}

bool Solver::satisfiable(std::span<const int> assumptions) {
    return search(assumptions);
}

void Solver::block(const Product& p) {
    if (p.size() != nvars_)
        throw std::invalid_argument("product is not total over the model");
    if (nvars_ == 0)
        return;
    std::vector<int32_t> lits(static_cast<size_t>(nvars_));
    for (int v = 0; v < nvars_; ++v)
        lits[static_cast<size_t>(v)] = (v << 1) | (p.selected(v + 1) ? 1 : 0);
    if (lits.size() == 1)
        unit_lits_.push_back(lits[0]);
    else
        add_clause_internal(lits);
    ++blocked_count_;
}

void Solver::clear_blocked() {
    lit_pool_.resize(base_lit_count_);
    clauses_.resize(base_clause_count_);
    unit_lits_.resize(base_unit_count_);
    blocked_count_ = 0;
    rebuild_watches();
}

std::optional<Product> solve(const FeatureModel& fm,
                             std::span<const int> assumptions, uint64_t seed) {
    Solver solver(fm, seed);
    return solver.solve(assumptions);
}

bool is_valid_tset(const FeatureModel& fm, const TSet& ts) {
    Solver solver(fm, kTSetCheckSeed);
    return solver.satisfiable(ts.literals);
}

SamplerSession::SamplerSession(const FeatureModel& fm, uint64_t seed)
    : fm_(&fm), solver_(fm, seed) {
    if (!solver_.satisfiable())
        throw InconsistentModelError("model has no valid product");
}

Product SamplerSession::next() {
    auto p = solver_.solve();
    if (!p) {
        // all valid products emitted once: reinitialize and keep sampling
        solver_.clear_blocked();
        ++reinits_;
        p = solver_.solve();
        if (!p)
            throw InconsistentModelError("model has no valid product");
    }
    solver_.block(*p);
    ++emitted_;
    return *p;
}

} // namespace spltest
