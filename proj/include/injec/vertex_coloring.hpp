#pragma once

#include "injec/color_set.hpp"
#include "injec/coloring.hpp"
#include "injec/error.hpp"
#include "injec/sat.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace injec {

enum class SearchStatus { Found, Infeasible, Timeout };

inline const char* to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Infeasible: return "infeasible";
    case SearchStatus::Timeout: return "timeout";
    }
    return "?";
}

struct SearchLimits {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::uint64_t node_limit = 0;  ///< 0 means unlimited

    static SearchLimits seconds(double s) {
        SearchLimits l;
        l.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(s));
        return l;
    }
};

struct SearchResult {
    SearchStatus status = SearchStatus::Infeasible;
    std::vector<int> colors;  ///< proper coloring when status == Found
    std::uint64_t nodes = 0;
};

namespace detail {

/// Dynamic bitset over search depths.
class DepthSet {
public:
    void reset(int bits) { words_.assign(static_cast<std::size_t>((bits + 63) / 64), 0); }
    void set(int i) { words_[static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63); }
    void erase(int i) { words_[static_cast<std::size_t>(i >> 6)] &= ~(1ULL << (i & 63)); }
    void set_below(int d) {
        for (int i = 0; i < d; ++i) set(i);
    }
    DepthSet& operator|=(const DepthSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    /// Highest member or -1.
    int highest() const {
        for (std::size_t i = words_.size(); i-- > 0;)
            if (words_[i] != 0) return static_cast<int>(i * 64) + 63 - std::countl_zero(words_[i]);
        return -1;
    }

private:
    std::vector<std::uint64_t> words_;
};

/// Forward-checking state shared by the decision search and the enumerator.
/// `pre[v]` holds colors v may never take (fixed neighbors outside the
/// searched set).
class SearchState {
public:
    SearchState(const Adjacency& adj, int k, std::vector<ColorSet> pre)
        : adj_(adj), k_(k), n_(static_cast<int>(adj.size())), pre_(std::move(pre)) {
        color_.assign(static_cast<std::size_t>(n_), 0);
        depth_.assign(static_cast<std::size_t>(n_), -1);
        block_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_ + 1), 0);
        used_.assign(static_cast<std::size_t>(k_ + 1), 0);
        dom_.resize(static_cast<std::size_t>(n_));
        ColorSet all = ColorSet::full(k_);
        for (int v = 0; v < n_; ++v) {
            dom_[static_cast<std::size_t>(v)] = all - pre_[static_cast<std::size_t>(v)];
            pre_any_ |= pre_[static_cast<std::size_t>(v)];
        }
    }

    int size() const { return n_; }
    int color(int v) const { return color_[static_cast<std::size_t>(v)]; }
    const ColorSet& domain(int v) const { return dom_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& colors() const { return color_; }

    /// A color no vertex currently uses and no fixed neighbor forbids: all
    /// such colors are interchangeable.
    bool fresh(int c) const { return used_[static_cast<std::size_t>(c)] == 0 && !pre_any_.contains(c); }

    /// Assigns and propagates; returns a vertex whose domain was wiped out, or -1.
    int assign(int v, int c, int depth) {
        color_[static_cast<std::size_t>(v)] = c;
        depth_[static_cast<std::size_t>(v)] = depth;
        ++used_[static_cast<std::size_t>(c)];
        int wiped = -1;
        for (int y : adj_[static_cast<std::size_t>(v)]) {
            if (color_[static_cast<std::size_t>(y)] != 0) continue;
            if (block_[idx(y, c)]++ == 0) {
                dom_[static_cast<std::size_t>(y)].erase(c);
                if (wiped < 0 && dom_[static_cast<std::size_t>(y)].empty()) wiped = y;
            }
        }
        return wiped;
    }

    void unassign(int v) {
        int c = color_[static_cast<std::size_t>(v)];
        for (int y : adj_[static_cast<std::size_t>(v)]) {
            if (color_[static_cast<std::size_t>(y)] != 0) continue;
            if (--block_[idx(y, c)] == 0 && !pre_[static_cast<std::size_t>(y)].contains(c))
                dom_[static_cast<std::size_t>(y)].insert(c);
        }
        --used_[static_cast<std::size_t>(c)];
        color_[static_cast<std::size_t>(v)] = 0;
        depth_[static_cast<std::size_t>(v)] = -1;
    }

    /// DSATUR choice: fewest remaining colors, then highest degree, then lowest id.
    int select() const {
        int best = -1;
        int bestDom = 0;
        std::size_t bestDeg = 0;
        for (int v = 0; v < n_; ++v) {
            if (color_[static_cast<std::size_t>(v)] != 0) continue;
            int d = dom_[static_cast<std::size_t>(v)].size();
            std::size_t deg = adj_[static_cast<std::size_t>(v)].size();
            if (best < 0 || d < bestDom || (d == bestDom && deg > bestDeg)) {
                best = v;
                bestDom = d;
                bestDeg = deg;
            }
        }
        return best;
    }

    /// Depths of the shallowest assigned neighbor per color removed from v's domain.
    void reasons(int v, DepthSet& out) const {
        std::vector<int> shallowest(static_cast<std::size_t>(k_ + 1), -1);
        for (int y : adj_[static_cast<std::size_t>(v)]) {
            int c = color_[static_cast<std::size_t>(y)];
            if (c == 0) continue;
            int d = depth_[static_cast<std::size_t>(y)];
            int& s = shallowest[static_cast<std::size_t>(c)];
            if (s < 0 || d < s) s = d;
        }
        for (int c = 1; c <= k_; ++c)
            if (shallowest[static_cast<std::size_t>(c)] >= 0) out.set(shallowest[static_cast<std::size_t>(c)]);
    }

private:
    std::size_t idx(int v, int c) const {
        return static_cast<std::size_t>(v) * static_cast<std::size_t>(k_ + 1) + static_cast<std::size_t>(c);
    }

    const Adjacency& adj_;
    int k_;
    int n_;
    std::vector<ColorSet> pre_;
    ColorSet pre_any_;
    std::vector<int> color_;
    std::vector<int> depth_;
    std::vector<std::uint16_t> block_;
    std::vector<int> used_;
    std::vector<ColorSet> dom_;
};

class Budget {
public:
    explicit Budget(const SearchLimits& limits) : limits_(limits) {}

    /// Counts one node; false once a limit is hit.
    bool tick() {
        ++nodes_;
        if (limits_.node_limit != 0 && nodes_ > limits_.node_limit) return false;
        if (limits_.deadline && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *limits_.deadline)
            return false;
        return true;
    }
    std::uint64_t nodes() const { return nodes_; }
    void add(std::uint64_t n) { nodes_ += n; }
    const SearchLimits& limits() const { return limits_; }
    /// Node allowance left, 0 when unlimited.
    std::uint64_t remaining() const {
        if (limits_.node_limit == 0) return 0;
        return limits_.node_limit > nodes_ ? limits_.node_limit - nodes_ : 1;
    }

private:
    SearchLimits limits_;
    std::uint64_t nodes_ = 0;
};

/// Backtracking with forward checking and conflict-directed backjumping.
/// Value symmetry: at each level only the lowest fresh color is tried.
inline SearchStatus backjump_search(const Adjacency& adj, int k, std::vector<ColorSet> pre, Budget& budget,
                                    std::vector<int>& out) {
    SearchState st(adj, k, std::move(pre));
    const int n = st.size();
    struct Level {
        int var = -1;
        int color = 0;
        bool freshTried = false;
        bool symSkipped = false;
        DepthSet conf;
    };
    std::vector<Level> levels(static_cast<std::size_t>(n));
    for (auto& l : levels) l.conf.reset(n);

    auto try_next = [&](int d) -> std::optional<bool> {
        Level& lv = levels[static_cast<std::size_t>(d)];
        const int v = lv.var;
        for (int c = st.domain(v).next(lv.color); c != 0; c = st.domain(v).next(c)) {
            lv.color = c;
            if (st.fresh(c)) {
                if (lv.freshTried) {
                    lv.symSkipped = true;
                    continue;
                }
                lv.freshTried = true;
            }
            if (!budget.tick()) return std::nullopt;
            int wiped = st.assign(v, c, d);
            if (wiped < 0) return true;
            DepthSet r;
            r.reset(n);
            st.reasons(wiped, r);
            r.erase(d);
            lv.conf |= r;
            st.unassign(v);
        }
        return false;
    };

    int depth = 0;
    while (true) {
        if (depth == n) {
            out = st.colors();
            return SearchStatus::Found;
        }
        Level& lv = levels[static_cast<std::size_t>(depth)];
        lv.var = st.select();
        lv.color = 0;
        lv.freshTried = false;
        lv.symSkipped = false;
        lv.conf.reset(n);
        auto ok = try_next(depth);
        if (!ok) return SearchStatus::Timeout;
        if (*ok) {
            ++depth;
            continue;
        }
        // Exhausted at `depth`: jump back to the deepest culprit.
        while (true) {
            Level& cur = levels[static_cast<std::size_t>(depth)];
            DepthSet full = cur.conf;
            st.reasons(cur.var, full);
            if (cur.symSkipped) full.set_below(depth);
            int h = full.highest();
            if (h < 0) return SearchStatus::Infeasible;
            full.erase(h);
            levels[static_cast<std::size_t>(h)].conf |= full;
            for (int d = depth - 1; d > h; --d) st.unassign(levels[static_cast<std::size_t>(d)].var);
            st.unassign(levels[static_cast<std::size_t>(h)].var);
            depth = h;
            auto again = try_next(depth);
            if (!again) return SearchStatus::Timeout;
            if (*again) {
                ++depth;
                break;
            }
        }
    }
}

/// Clause-learning fallback: one boolean per (vertex, allowed color), an
/// at-least-one clause per vertex and a binary clause per edge and color.
/// Without fixed colors a greedy clique is pinned to 1..t.
inline SearchStatus sat_search(const Adjacency& adj, int k, const std::vector<ColorSet>& pre, Budget& budget,
                               std::vector<int>& out) {
    const int n = static_cast<int>(adj.size());
    sat::Solver solver;
    std::vector<std::vector<int>> var(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(k + 1), -1));
    for (int v = 0; v < n; ++v)
        for (int c = 1; c <= k; ++c)
            if (!pre[static_cast<std::size_t>(v)].contains(c)) var[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = solver.new_var();
    for (int v = 0; v < n; ++v) {
        std::vector<sat::Lit> some;
        for (int c = 1; c <= k; ++c)
            if (int x = var[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)]; x >= 0) some.push_back(sat::pos(x));
        solver.add_clause(some);
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (w < v) continue;
            for (int c = 1; c <= k; ++c) {
                int a = var[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
                int b = var[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)];
                if (a >= 0 && b >= 0) solver.add_clause({sat::neg(a), sat::neg(b)});
            }
        }
    }
    if (std::all_of(pre.begin(), pre.end(), [](const ColorSet& s) { return s.empty(); }) && n > 0) {
        int start = 0;
        for (int v = 1; v < n; ++v)
            if (adj[static_cast<std::size_t>(v)].size() > adj[static_cast<std::size_t>(start)].size()) start = v;
        std::vector<int> clique{start};
        std::vector<int> cand = adj[static_cast<std::size_t>(start)];
        std::sort(cand.begin(), cand.end(), [&](int a, int b) {
            return adj[static_cast<std::size_t>(a)].size() > adj[static_cast<std::size_t>(b)].size() ||
                   (adj[static_cast<std::size_t>(a)].size() == adj[static_cast<std::size_t>(b)].size() && a < b);
        });
        auto linked = [&](int a, int b) {
            const auto& nb = adj[static_cast<std::size_t>(a)];
            return std::find(nb.begin(), nb.end(), b) != nb.end();
        };
        for (int w : cand)
            if (std::all_of(clique.begin(), clique.end(), [&](int x) { return linked(x, w); })) clique.push_back(w);
        if (static_cast<int>(clique.size()) > k) return SearchStatus::Infeasible;
        for (std::size_t i = 0; i < clique.size(); ++i)
            solver.add_clause({sat::pos(var[static_cast<std::size_t>(clique[i])][i + 1])});
    }
    sat::Limits sl;
    sl.deadline = budget.limits().deadline;
    sl.work_limit = budget.remaining();
    sat::Result r = solver.solve(sl);
    budget.add(solver.conflicts() + solver.decisions());
    if (r == sat::Result::Unknown) return SearchStatus::Timeout;
    if (r == sat::Result::Unsat) return SearchStatus::Infeasible;
    out.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int c = 1; c <= k && out[static_cast<std::size_t>(v)] == 0; ++c)
            if (int x = var[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)]; x >= 0 && solver.model(x))
                out[static_cast<std::size_t>(v)] = c;
    return SearchStatus::Found;
}

/// Nodes the backjumping search may spend on one component before the
/// clause-learning search takes over.
inline constexpr std::uint64_t kBackjumpNodeCap = 200000;

/// Backjumping first, clause learning if it stalls.
inline SearchStatus hybrid_search(const Adjacency& adj, int k, std::vector<ColorSet> pre, Budget& budget,
                                  std::vector<int>& out) {
    SearchLimits probeLimits = budget.limits();
    std::uint64_t cap = kBackjumpNodeCap;
    if (budget.remaining() != 0) cap = std::min(cap, budget.remaining());
    probeLimits.node_limit = cap;
    Budget probe(probeLimits);
    SearchStatus st = backjump_search(adj, k, pre, probe, out);
    budget.add(probe.nodes());
    if (st != SearchStatus::Timeout) return st;
    if (budget.limits().deadline && std::chrono::steady_clock::now() > *budget.limits().deadline) return st;
    if (budget.limits().node_limit != 0 && budget.nodes() >= budget.limits().node_limit) return st;
    return sat_search(adj, k, pre, budget, out);
}

inline void check_budget_k(int k) {
    if (k > ColorSet::capacity)
        throw Error(ErrorCode::BadParams, "color budget " + std::to_string(k) + " exceeds " +
                                              std::to_string(ColorSet::capacity));
}

} // namespace detail

/// Exact k-coloring search with optional fixed colors (`precolor[v] != 0`).
///
/// Vertices that can always be colored last (fewer than k constraints once
/// the rest is removed) are peeled off first; the remaining core is split into
/// connected components that are searched independently.
inline SearchResult vertex_color_search(const Adjacency& adj, int k, std::span<const int> precolor = {},
                                        SearchLimits limits = {}) {
    detail::check_budget_k(k);
    const int n = static_cast<int>(adj.size());
    SearchResult res;
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    if (!precolor.empty()) {
        if (static_cast<int>(precolor.size()) != n) throw Error(ErrorCode::BadParams, "precolor size mismatch");
        for (int v = 0; v < n; ++v) {
            int c = precolor[static_cast<std::size_t>(v)];
            if (c < 0 || c > k) throw Error(ErrorCode::BadParams, "precolor outside 1..k");
            color[static_cast<std::size_t>(v)] = c;
        }
        for (int v = 0; v < n; ++v)
            for (int w : adj[static_cast<std::size_t>(v)])
                if (color[static_cast<std::size_t>(v)] != 0 && color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(w)])
                    return res;
    }
    if (k < 1) {
        if (std::all_of(color.begin(), color.end(), [](int c) { return c != 0; })) {
            res.status = SearchStatus::Found;
            res.colors = color;
        }
        return res;
    }

    std::vector<ColorSet> fixedNb(static_cast<std::size_t>(n));
    std::vector<int> freeDeg(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (color[static_cast<std::size_t>(v)] != 0) continue;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (color[static_cast<std::size_t>(w)] != 0) fixedNb[static_cast<std::size_t>(v)].insert(color[static_cast<std::size_t>(w)]);
            else ++freeDeg[static_cast<std::size_t>(v)];
        }
        if (fixedNb[static_cast<std::size_t>(v)].size() >= k) return res;
    }

    // Peel vertices with fewer than k constraints.
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<int> peelOrder;
    std::vector<int> queue;
    auto peelable = [&](int v) {
        return color[static_cast<std::size_t>(v)] == 0 && !removed[static_cast<std::size_t>(v)] &&
               freeDeg[static_cast<std::size_t>(v)] + fixedNb[static_cast<std::size_t>(v)].size() < k;
    };
    for (int v = 0; v < n; ++v)
        if (peelable(v)) {
            removed[static_cast<std::size_t>(v)] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        peelOrder.push_back(v);
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (color[static_cast<std::size_t>(w)] != 0 || removed[static_cast<std::size_t>(w)]) continue;
            --freeDeg[static_cast<std::size_t>(w)];
            if (peelable(w)) {
                removed[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
        }
    }

    // Components of the core.
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    detail::Budget budget(limits);
    for (int s = 0; s < n; ++s) {
        if (color[static_cast<std::size_t>(s)] != 0 || removed[static_cast<std::size_t>(s)] || comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> members{s};
        comp[static_cast<std::size_t>(s)] = s;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (int w : adj[static_cast<std::size_t>(members[i])])
                if (color[static_cast<std::size_t>(w)] == 0 && !removed[static_cast<std::size_t>(w)] && comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = s;
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        std::vector<int> local(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < members.size(); ++i) local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
        Adjacency sub(members.size());
        std::vector<ColorSet> pre(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            pre[i] = fixedNb[static_cast<std::size_t>(members[i])];
            for (int w : adj[static_cast<std::size_t>(members[i])])
                if (local[static_cast<std::size_t>(w)] >= 0) sub[i].push_back(local[static_cast<std::size_t>(w)]);
        }
        std::vector<int> subColors;
        SearchStatus st = detail::hybrid_search(sub, k, std::move(pre), budget, subColors);
        if (st != SearchStatus::Found) {
            res.status = st;
            res.nodes = budget.nodes();
            return res;
        }
        for (std::size_t i = 0; i < members.size(); ++i) color[static_cast<std::size_t>(members[i])] = subColors[i];
    }

    // Peeled vertices go last, in reverse removal order.
    for (auto it = peelOrder.rbegin(); it != peelOrder.rend(); ++it) {
        ColorSet used;
        for (int w : adj[static_cast<std::size_t>(*it)])
            if (color[static_cast<std::size_t>(w)] != 0) used.insert(color[static_cast<std::size_t>(w)]);
        int c = (ColorSet::full(k) - used).first();
        if (c == 0) throw Error(ErrorCode::BadParams, "internal: peeled vertex without a free color");
        color[static_cast<std::size_t>(*it)] = c;
    }
    res.status = SearchStatus::Found;
    res.colors = std::move(color);
    res.nodes = budget.nodes();
    return res;
}

/// A proper k-coloring (colors 1..k) if one exists.
inline std::optional<std::vector<int>> vertex_color_decide(const Adjacency& adj, int k) {
    SearchResult r = vertex_color_search(adj, k);
    if (r.status == SearchStatus::Found) return std::move(r.colors);
    return std::nullopt;
}

/// DSATUR greedy coloring; never fails, uses at most max degree + 1 colors.
inline std::vector<int> dsatur_greedy(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<char>> seen(static_cast<std::size_t>(n));
    std::vector<int> sat(static_cast<std::size_t>(n), 0);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (color[static_cast<std::size_t>(v)] != 0) continue;
            if (best < 0 || sat[static_cast<std::size_t>(v)] > sat[static_cast<std::size_t>(best)] ||
                (sat[static_cast<std::size_t>(v)] == sat[static_cast<std::size_t>(best)] &&
                 adj[static_cast<std::size_t>(v)].size() > adj[static_cast<std::size_t>(best)].size()))
                best = v;
        }
        std::vector<char> used(adj[static_cast<std::size_t>(best)].size() + 2, 0);
        for (int w : adj[static_cast<std::size_t>(best)]) {
            int c = color[static_cast<std::size_t>(w)];
            if (c != 0 && c < static_cast<int>(used.size())) used[static_cast<std::size_t>(c)] = 1;
        }
        int c = 1;
        while (used[static_cast<std::size_t>(c)]) ++c;
        color[static_cast<std::size_t>(best)] = c;
        for (int w : adj[static_cast<std::size_t>(best)]) {
            auto& sw = seen[static_cast<std::size_t>(w)];
            if (static_cast<int>(sw.size()) <= c) sw.resize(static_cast<std::size_t>(c + 1), 0);
            if (!sw[static_cast<std::size_t>(c)]) {
                sw[static_cast<std::size_t>(c)] = 1;
                ++sat[static_cast<std::size_t>(w)];
            }
        }
    }
    return color;
}

/// Size of a clique found greedily from every start vertex.
inline int greedy_clique_size(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    if (n == 0) return 0;
    std::vector<std::vector<int>> sorted(adj.begin(), adj.end());
    for (auto& nb : sorted) std::sort(nb.begin(), nb.end());
    auto linked = [&](int a, int b) {
        const auto& nb = sorted[static_cast<std::size_t>(a)];
        return std::binary_search(nb.begin(), nb.end(), b);
    };
    int best = 1;
    for (int v = 0; v < n; ++v) {
        std::vector<int> cand = sorted[static_cast<std::size_t>(v)];
        std::sort(cand.begin(), cand.end(), [&](int a, int b) {
            return adj[static_cast<std::size_t>(a)].size() > adj[static_cast<std::size_t>(b)].size();
        });
        std::vector<int> clique{v};
        for (int w : cand)
            if (std::all_of(clique.begin(), clique.end(), [&](int x) { return linked(x, w); })) clique.push_back(w);
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

/// Least k admitting a proper coloring: 0 for no vertices, 1 for edgeless.
inline int vertex_chromatic(const Adjacency& adj, SearchLimits limits = {}) {
    if (adj.empty()) return 0;
    std::vector<int> greedy = dsatur_greedy(adj);
    int ub = *std::max_element(greedy.begin(), greedy.end());
    int lb = greedy_clique_size(adj);
    for (int k = lb; k < ub; ++k) {
        SearchResult r = vertex_color_search(adj, k, {}, limits);
        if (r.status == SearchStatus::Timeout) throw Error(ErrorCode::CapExceeded, "time budget exceeded");
        if (r.status == SearchStatus::Found) return k;
    }
    return ub;
}

/// Visits every proper k-coloring consistent with `precolor` exactly once, in
/// a deterministic order. The visitor returns false to stop early. Returns the
/// number of colorings visited.
inline std::uint64_t for_each_coloring(const Adjacency& adj, int k,
                                       const std::function<bool(std::span<const int>)>& visit,
                                       std::span<const int> precolor = {}) {
    detail::check_budget_k(k);
    const int n = static_cast<int>(adj.size());
    std::vector<int> fixedColor(static_cast<std::size_t>(n), 0);
    if (!precolor.empty()) {
        if (static_cast<int>(precolor.size()) != n) throw Error(ErrorCode::BadParams, "precolor size mismatch");
        std::copy(precolor.begin(), precolor.end(), fixedColor.begin());
        for (int v = 0; v < n; ++v)
            for (int w : adj[static_cast<std::size_t>(v)])
                if (fixedColor[static_cast<std::size_t>(v)] != 0 && fixedColor[static_cast<std::size_t>(v)] == fixedColor[static_cast<std::size_t>(w)])
                    return 0;
    }
    std::vector<int> freeVerts;
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (fixedColor[static_cast<std::size_t>(v)] == 0) {
            local[static_cast<std::size_t>(v)] = static_cast<int>(freeVerts.size());
            freeVerts.push_back(v);
        }
    Adjacency sub(freeVerts.size());
    std::vector<ColorSet> pre(freeVerts.size());
    for (std::size_t i = 0; i < freeVerts.size(); ++i)
        for (int w : adj[static_cast<std::size_t>(freeVerts[i])]) {
            if (local[static_cast<std::size_t>(w)] >= 0) sub[i].push_back(local[static_cast<std::size_t>(w)]);
            else pre[i].insert(fixedColor[static_cast<std::size_t>(w)]);
        }
    if (k < 1 && !freeVerts.empty()) return 0;
    detail::SearchState st(sub, std::max(k, 0), std::move(pre));
    std::vector<int> full = fixedColor;
    std::uint64_t count = 0;
    bool stop = false;
    const int m = static_cast<int>(freeVerts.size());

    std::function<void(int)> rec = [&](int depth) {
        if (stop) return;
        if (depth == m) {
            for (int i = 0; i < m; ++i) full[static_cast<std::size_t>(freeVerts[static_cast<std::size_t>(i)])] = st.color(i);
            ++count;
            if (!visit(full)) stop = true;
            return;
        }
        int v = st.select();
        ColorSet dom = st.domain(v);
        for (int c = dom.first(); c != 0 && !stop; c = dom.next(c)) {
            int wiped = st.assign(v, c, depth);
            if (wiped < 0) rec(depth + 1);
            st.unassign(v);
        }
    };
    rec(0);
    return count;
}

/// Collects every proper k-coloring; throws CapExceeded when more than `cap`
/// exist (cap == 0 means unlimited).
inline std::vector<std::vector<int>> enumerate_colorings(const Adjacency& adj, int k, std::uint64_t cap = 0) {
    std::vector<std::vector<int>> out;
    bool overflow = false;
    for_each_coloring(adj, k, [&](std::span<const int> c) {
        if (cap != 0 && out.size() >= cap) {
            overflow = true;
            return false;
        }
        out.emplace_back(c.begin(), c.end());
        return true;
    });
    if (overflow) throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " colorings");
    return out;
}

} // namespace injec
