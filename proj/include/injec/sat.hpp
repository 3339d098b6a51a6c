#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace injec::sat {

/// Literal encoding: 2 * var for the positive literal, 2 * var + 1 for its negation.
using Lit = int;

constexpr Lit pos(int var) { return 2 * var; }
constexpr Lit neg(int var) { return 2 * var + 1; }
constexpr int var_of(Lit l) { return l >> 1; }

enum class Result { Sat, Unsat, Unknown };

struct Limits {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::uint64_t work_limit = 0; ///< conflicts + decisions, 0 = unbounded
};

/// Conflict-driven clause learning: two watched literals, first-UIP
/// learning with local minimization, VSIDS, phase saving, Luby restarts.
class Solver {
public:
    int new_var() {
        int v = static_cast<int>(assign_.size());
        assign_.push_back(0);
        level_.push_back(0);
        reason_.push_back(-1);
        seen_.push_back(0);
        phase_.push_back(0);
        activity_.push_back(0.0);
        heapPos_.push_back(-1);
        watches_.emplace_back();
        watches_.emplace_back();
        heap_insert(v);
        return v;
    }

    int var_count() const { return static_cast<int>(assign_.size()); }

    /// Adds a clause at decision level 0. Returns false once the formula is
    /// known to be unsatisfiable.
    bool add_clause(std::vector<Lit> lits) {
        if (!ok_) return false;
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        std::vector<Lit> kept;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i + 1 < lits.size() && lits[i + 1] == (lits[i] ^ 1)) return true;
            int val = value(lits[i]);
            if (val > 0) return true;
            if (val == 0) kept.push_back(lits[i]);
        }
        if (kept.empty()) return ok_ = false;
        if (kept.size() == 1) {
            enqueue(kept[0], -1);
            if (propagate() >= 0) ok_ = false;
            return ok_;
        }
        attach(std::move(kept), false);
        return true;
    }

    Result solve(const Limits& limits = {}) {
        if (!ok_) return Result::Unsat;
        if (propagate() >= 0) {
            ok_ = false;
            return Result::Unsat;
        }
        maxLearnts_ = std::max<std::size_t>(clauses_.size() / 3, 2000);
        for (std::uint64_t restart = 0;; ++restart) {
            std::uint64_t budget = 100 * luby(restart);
            Result r = search(budget, limits);
            if (r != Result::Unknown) return r;
            if (stopped_) return Result::Unknown;
        }
    }

    /// Model value after Sat.
    bool model(int var) const { return assign_[static_cast<std::size_t>(var)] > 0; }
    std::uint64_t conflicts() const { return conflicts_; }
    std::uint64_t decisions() const { return decisions_; }

private:
    struct Clause {
        std::vector<Lit> lits;
        bool learnt = false;
        bool deleted = false;
        double activity = 0.0;
    };
    struct Watcher {
        int cref;
        Lit blocker;
    };

    // +1 true, -1 false, 0 unassigned.
    int value(Lit l) const {
        int a = assign_[static_cast<std::size_t>(var_of(l))];
        return (l & 1) ? -a : a;
    }
    int decision_level() const { return static_cast<int>(trailLim_.size()); }

    void enqueue(Lit l, int reason) {
        auto v = static_cast<std::size_t>(var_of(l));
        assign_[v] = (l & 1) ? -1 : 1;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(l);
    }

    int attach(std::vector<Lit> lits, bool learnt) {
        int cref = static_cast<int>(clauses_.size());
        watches_[static_cast<std::size_t>(lits[0])].push_back({cref, lits[1]});
        watches_[static_cast<std::size_t>(lits[1])].push_back({cref, lits[0]});
        clauses_.push_back({std::move(lits), learnt, false, 0.0});
        if (learnt) learnts_.push_back(cref);
        return cref;
    }

    // Watch lists hold clauses that watch the literal; they are visited when
    // it becomes false. Returns a conflicting clause or -1.
    int propagate() {
        int conflict = -1;
        while (qhead_ < trail_.size()) {
            Lit falseLit = trail_[qhead_++] ^ 1;
            auto& ws = watches_[static_cast<std::size_t>(falseLit)];
            std::size_t i = 0;
            std::size_t j = 0;
            while (i < ws.size()) {
                Watcher w = ws[i++];
                if (value(w.blocker) > 0) {
                    ws[j++] = w;
                    continue;
                }
                Clause& c = clauses_[static_cast<std::size_t>(w.cref)];
                if (c.deleted) continue;
                auto& ls = c.lits;
                if (ls[0] == falseLit) std::swap(ls[0], ls[1]);
                Lit first = ls[0];
                if (first != w.blocker && value(first) > 0) {
                    ws[j++] = {w.cref, first};
                    continue;
                }
                bool moved = false;
                for (std::size_t t = 2; t < ls.size(); ++t)
                    if (value(ls[t]) >= 0) {
                        std::swap(ls[1], ls[t]);
                        watches_[static_cast<std::size_t>(ls[1])].push_back({w.cref, first});
                        moved = true;
                        break;
                    }
                if (moved) continue;
                ws[j++] = {w.cref, first};
                if (value(first) < 0) {
                    conflict = w.cref;
                    qhead_ = trail_.size();
                    while (i < ws.size()) ws[j++] = ws[i++];
                } else {
                    enqueue(first, w.cref);
                }
            }
            ws.resize(j);
        }
        return conflict;
    }

    void analyze(int confl, std::vector<Lit>& learnt, int& backLevel) {
        learnt.assign(1, 0);
        int pathCount = 0;
        Lit p = -1;
        std::size_t idx = trail_.size();
        do {
            Clause& c = clauses_[static_cast<std::size_t>(confl)];
            if (c.learnt) bump_clause(c);
            for (std::size_t j = p < 0 ? 0 : 1; j < c.lits.size(); ++j) {
                Lit q = c.lits[j];
                auto v = static_cast<std::size_t>(var_of(q));
                if (seen_[v] || level_[v] == 0) continue;
                bump_var(var_of(q));
                seen_[v] = 1;
                if (level_[v] >= decision_level()) ++pathCount;
                else learnt.push_back(q);
            }
            while (!seen_[static_cast<std::size_t>(var_of(trail_[--idx]))]) {
            }
            p = trail_[idx];
            confl = reason_[static_cast<std::size_t>(var_of(p))];
            seen_[static_cast<std::size_t>(var_of(p))] = 0;
            --pathCount;
        } while (pathCount > 0);
        learnt[0] = p ^ 1;

        // Drop literals implied by the rest of the clause.
        std::vector<Lit> marked(learnt.begin() + 1, learnt.end());
        std::size_t keep = 1;
        for (std::size_t i = 1; i < learnt.size(); ++i) {
            int r = reason_[static_cast<std::size_t>(var_of(learnt[i]))];
            bool needed = r < 0;
            if (!needed)
                for (Lit q : clauses_[static_cast<std::size_t>(r)].lits) {
                    auto v = static_cast<std::size_t>(var_of(q));
                    if (var_of(q) != var_of(learnt[i]) && !seen_[v] && level_[v] > 0) {
                        needed = true;
                        break;
                    }
                }
            if (needed) learnt[keep++] = learnt[i];
        }
        learnt.resize(keep);
        for (Lit q : marked) seen_[static_cast<std::size_t>(var_of(q))] = 0;

        backLevel = 0;
        if (learnt.size() > 1) {
            std::size_t best = 1;
            for (std::size_t i = 2; i < learnt.size(); ++i)
                if (level_[static_cast<std::size_t>(var_of(learnt[i]))] > level_[static_cast<std::size_t>(var_of(learnt[best]))])
                    best = i;
            std::swap(learnt[1], learnt[best]);
            backLevel = level_[static_cast<std::size_t>(var_of(learnt[1]))];
        }
    }

    void backtrack(int lvl) {
        if (decision_level() <= lvl) return;
        std::size_t stop = trailLim_[static_cast<std::size_t>(lvl)];
        for (std::size_t i = trail_.size(); i-- > stop;) {
            auto v = static_cast<std::size_t>(var_of(trail_[i]));
            assign_[v] = 0;
            reason_[v] = -1;
            phase_[v] = static_cast<char>(trail_[i] & 1);
            if (heapPos_[v] < 0) heap_insert(static_cast<int>(v));
        }
        trail_.resize(stop);
        qhead_ = stop;
        trailLim_.resize(static_cast<std::size_t>(lvl));
    }

    Result search(std::uint64_t conflictBudget, const Limits& limits) {
        std::uint64_t local = 0;
        std::vector<Lit> learnt;
        while (true) {
            int confl = propagate();
            if (confl >= 0) {
                ++conflicts_;
                ++local;
                if (decision_level() == 0) {
                    ok_ = false;
                    return Result::Unsat;
                }
                int back = 0;
                analyze(confl, learnt, back);
                backtrack(back);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    Lit first = learnt[0];
                    int cref = attach(learnt, true);
                    bump_clause(clauses_[static_cast<std::size_t>(cref)]);
                    enqueue(first, cref);
                }
                varInc_ /= 0.95;
                clauseInc_ /= 0.999;
                if (out_of_budget(limits)) return Result::Unknown;
                continue;
            }
            if (local >= conflictBudget) {
                backtrack(0);
                return Result::Unknown;
            }
            if (learnts_.size() >= maxLearnts_ + trail_.size()) {
                reduce_db();
                maxLearnts_ += maxLearnts_ / 10;
            }
            int next = -1;
            while (!heapEmpty()) {
                int v = heap_pop();
                if (assign_[static_cast<std::size_t>(v)] == 0) {
                    next = v;
                    break;
                }
            }
            if (next < 0) return Result::Sat;
            ++decisions_;
            if ((decisions_ & 4095) == 0 && out_of_budget(limits)) return Result::Unknown;
            trailLim_.push_back(trail_.size());
            enqueue(phase_[static_cast<std::size_t>(next)] ? neg(next) : pos(next), -1);
        }
    }

    bool out_of_budget(const Limits& limits) {
        if (limits.work_limit != 0 && conflicts_ + decisions_ > limits.work_limit) stopped_ = true;
        if (limits.deadline && (conflicts_ & 255) == 0 && std::chrono::steady_clock::now() > *limits.deadline)
            stopped_ = true;
        return stopped_;
    }

    bool locked(int cref) const {
        const Clause& c = clauses_[static_cast<std::size_t>(cref)];
        return reason_[static_cast<std::size_t>(var_of(c.lits[0]))] == cref && value(c.lits[0]) > 0;
    }

    void reduce_db() {
        std::sort(learnts_.begin(), learnts_.end(), [&](int a, int b) {
            return clauses_[static_cast<std::size_t>(a)].activity < clauses_[static_cast<std::size_t>(b)].activity;
        });
        std::size_t half = learnts_.size() / 2;
        std::vector<int> kept;
        for (std::size_t i = 0; i < learnts_.size(); ++i) {
            int cref = learnts_[i];
            Clause& c = clauses_[static_cast<std::size_t>(cref)];
            if (i < half && c.lits.size() > 2 && !locked(cref)) {
                c.deleted = true;
                c.lits.clear();
                c.lits.shrink_to_fit();
            } else {
                kept.push_back(cref);
            }
        }
        learnts_ = std::move(kept);
        for (auto& ws : watches_)
            ws.erase(std::remove_if(ws.begin(), ws.end(),
                                    [&](const Watcher& w) { return clauses_[static_cast<std::size_t>(w.cref)].deleted; }),
                     ws.end());
    }

    void bump_var(int v) {
        auto& a = activity_[static_cast<std::size_t>(v)];
        a += varInc_;
        if (a > 1e100) {
            for (auto& x : activity_) x *= 1e-100;
            varInc_ *= 1e-100;
        }
        if (heapPos_[static_cast<std::size_t>(v)] >= 0) heap_up(heapPos_[static_cast<std::size_t>(v)]);
    }

    void bump_clause(Clause& c) {
        c.activity += clauseInc_;
        if (c.activity > 1e20) {
            for (int cref : learnts_) clauses_[static_cast<std::size_t>(cref)].activity *= 1e-20;
            clauseInc_ *= 1e-20;
        }
    }

    static std::uint64_t luby(std::uint64_t i) {
        std::uint64_t size = 1;
        int seq = 0;
        while (size < i + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != i) {
            size = (size - 1) >> 1;
            --seq;
            i = i % size;
        }
        return std::uint64_t{1} << seq;
    }

    // Max-heap on activity.
    bool heapEmpty() const { return heap_.empty(); }
    bool heap_less(int a, int b) const {
        return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)] ||
               (activity_[static_cast<std::size_t>(a)] == activity_[static_cast<std::size_t>(b)] && a < b);
    }
    void heap_place(int i, int v) {
        heap_[static_cast<std::size_t>(i)] = v;
        heapPos_[static_cast<std::size_t>(v)] = i;
    }
    void heap_up(int i) {
        int v = heap_[static_cast<std::size_t>(i)];
        while (i > 0) {
            int parent = (i - 1) / 2;
            if (!heap_less(v, heap_[static_cast<std::size_t>(parent)])) break;
            heap_place(i, heap_[static_cast<std::size_t>(parent)]);
            i = parent;
        }
        heap_place(i, v);
    }
    void heap_down(int i) {
        int n = static_cast<int>(heap_.size());
        int v = heap_[static_cast<std::size_t>(i)];
        while (true) {
            int child = 2 * i + 1;
            if (child >= n) break;
            if (child + 1 < n && heap_less(heap_[static_cast<std::size_t>(child + 1)], heap_[static_cast<std::size_t>(child)]))
                ++child;
            if (!heap_less(heap_[static_cast<std::size_t>(child)], v)) break;
            heap_place(i, heap_[static_cast<std::size_t>(child)]);
            i = child;
        }
        heap_place(i, v);
    }
    void heap_insert(int v) {
        heap_.push_back(v);
        heap_up(static_cast<int>(heap_.size()) - 1);
    }
    int heap_pop() {
        int top = heap_[0];
        heapPos_[static_cast<std::size_t>(top)] = -1;
        int last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_place(0, last);
            heap_down(0);
        }
        return top;
    }

    bool ok_ = true;
    bool stopped_ = false;
    std::vector<signed char> assign_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<char> seen_;
    std::vector<char> phase_;
    std::vector<double> activity_;
    std::vector<int> heap_;
    std::vector<int> heapPos_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<Clause> clauses_;
    std::vector<int> learnts_;
    std::vector<Lit> trail_;
    std::vector<std::size_t> trailLim_;
    std::size_t qhead_ = 0;
    std::size_t maxLearnts_ = 2000;
    double varInc_ = 1.0;
    double clauseInc_ = 1.0;
    std::uint64_t conflicts_ = 0;
    std::uint64_t decisions_ = 0;
};

} // namespace injec::sat
