#pragma once

#include "injec/color_set.hpp"
#include "injec/coloring.hpp"
#include "injec/error.hpp"
#include "injec/graph.hpp"
#include "injec/solvers.hpp"
#include "injec/treewidth.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace injec {

/// One DP state over a bag. `a[i]`, `b[i]` belong to the i-th bag vertex
/// (ascending id); `edge_colors[j]` to the j-th bag edge (ascending EdgeId).
///
/// a: colors of edges from the vertex to already forgotten vertices.
/// b: colors of edges zw with z a neighbor of the vertex, w not the vertex,
///    and at least one of z, w forgotten.
struct DPState {
    std::vector<ColorSet> a;
    std::vector<ColorSet> b;
    std::vector<int> edge_colors;

    friend auto operator<=>(const DPState&, const DPState&) = default;
};

struct StateTable {
    std::vector<VertexId> bag;
    std::vector<EdgeId> bag_edges;
    std::set<DPState> states;

    int size() const { return static_cast<int>(states.size()); }

    int index_of(VertexId v) const {
        auto it = std::lower_bound(bag.begin(), bag.end(), v);
        return it != bag.end() && *it == v ? static_cast<int>(it - bag.begin()) : -1;
    }
};

/// Edges of g with both endpoints in the (sorted) bag, ascending.
inline std::vector<EdgeId> bag_edges(const Graph& g, const std::vector<VertexId>& bag) {
    std::vector<EdgeId> out;
    for (VertexId u : bag) {
        auto nb = g.neighbors(u);
        auto inc = g.incident(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (nb[i] > u && std::binary_search(bag.begin(), bag.end(), nb[i])) out.push_back(inc[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline StateTable table_leaf() {
    StateTable t;
    t.states.insert(DPState{});
    return t;
}

inline StateTable transition_forget(const StateTable& child, VertexId a, const Graph& g) {
    const int ai = child.index_of(a);
    if (ai < 0) throw Error(ErrorCode::DecompositionMismatch, "forgotten vertex not in child bag");
    StateTable out;
    out.bag = child.bag;
    out.bag.erase(out.bag.begin() + ai);
    out.bag_edges = bag_edges(g, out.bag);
    const int n = static_cast<int>(out.bag.size());

    // Child edge slot for each aw, indexed by parent bag position (-1 if absent),
    // and where each surviving bag edge sits in the child.
    std::vector<int> slotOfA(static_cast<std::size_t>(n), -1);
    for (std::size_t j = 0; j < child.bag_edges.size(); ++j) {
        const Edge& e = g.edge(child.bag_edges[j]);
        if (!e.has(a)) continue;
        slotOfA[static_cast<std::size_t>(out.index_of(e.other(a)))] = static_cast<int>(j);
    }
    std::vector<int> keep;
    for (EdgeId e : out.bag_edges)
        keep.push_back(static_cast<int>(std::lower_bound(child.bag_edges.begin(), child.bag_edges.end(), e) -
                                        child.bag_edges.begin()));

    for (const DPState& s : child.states) {
        DPState t;
        t.a.reserve(static_cast<std::size_t>(n));
        t.b.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            int ci = i < ai ? i : i + 1;
            VertexId u = out.bag[static_cast<std::size_t>(i)];
            ColorSet A = s.a[static_cast<std::size_t>(ci)];
            ColorSet B = s.b[static_cast<std::size_t>(ci)];
            bool adjacent = slotOfA[static_cast<std::size_t>(i)] >= 0;
            if (adjacent) A.insert(s.edge_colors[static_cast<std::size_t>(slotOfA[static_cast<std::size_t>(i)])]);
            for (int w = 0; w < n; ++w) {
                int slot = slotOfA[static_cast<std::size_t>(w)];
                if (slot < 0 || w == i) continue;
                if (adjacent || g.adjacent(u, out.bag[static_cast<std::size_t>(w)]))
                    B.insert(s.edge_colors[static_cast<std::size_t>(slot)]);
            }
            t.a.push_back(A);
            t.b.push_back(B);
        }
        for (int j : keep) t.edge_colors.push_back(s.edge_colors[static_cast<std::size_t>(j)]);
        out.states.insert(std::move(t));
    }
    return out;
}

inline StateTable transition_introduce(const StateTable& child, VertexId a, const Graph& g, int k) {
    if (child.index_of(a) >= 0) throw Error(ErrorCode::DecompositionMismatch, "introduced vertex already in child bag");
    StateTable out;
    out.bag = child.bag;
    const int ai = static_cast<int>(std::lower_bound(out.bag.begin(), out.bag.end(), a) - out.bag.begin());
    out.bag.insert(out.bag.begin() + ai, a);
    out.bag_edges = bag_edges(g, out.bag);
    const int n = static_cast<int>(out.bag.size());
    const int m = static_cast<int>(out.bag_edges.size());

    // Parent edge slots: old ones come from the child, new ones touch a.
    std::vector<int> fromChild(static_cast<std::size_t>(m), -1);
    std::vector<int> newSlots;
    std::vector<int> newEnd;  ///< parent bag position of the far endpoint u of ua
    for (int j = 0; j < m; ++j) {
        const Edge& e = g.edge(out.bag_edges[static_cast<std::size_t>(j)]);
        if (e.has(a)) {
            newSlots.push_back(j);
            newEnd.push_back(out.index_of(e.other(a)));
        } else {
            fromChild[static_cast<std::size_t>(j)] = static_cast<int>(
                std::lower_bound(child.bag_edges.begin(), child.bag_edges.end(), out.bag_edges[static_cast<std::size_t>(j)]) -
                child.bag_edges.begin());
        }
    }
    // Conflicts inside the bag subgraph that involve a new edge.
    std::vector<std::vector<int>> bagConflicts(static_cast<std::size_t>(m));
    {
        auto slotOf = [&](VertexId x, VertexId y) -> int {
            auto e = g.find_edge(x, y);
            if (!e) return -1;
            auto it = std::lower_bound(out.bag_edges.begin(), out.bag_edges.end(), *e);
            return it != out.bag_edges.end() && *it == *e ? static_cast<int>(it - out.bag_edges.begin()) : -1;
        };
        for (int mid = 0; mid < m; ++mid) {
            const Edge& me = g.edge(out.bag_edges[static_cast<std::size_t>(mid)]);
            for (VertexId x : out.bag) {
                int e1 = slotOf(me.u, x);
                if (e1 < 0 || e1 == mid) continue;
                for (VertexId y : out.bag) {
                    int e2 = slotOf(me.v, y);
                    if (e2 < 0 || e2 == mid || e2 == e1) continue;
                    bagConflicts[static_cast<std::size_t>(e1)].push_back(e2);
                    bagConflicts[static_cast<std::size_t>(e2)].push_back(e1);
                }
            }
        }
        for (auto& v : bagConflicts) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }
    const int d = static_cast<int>(newSlots.size());
    std::vector<char> isNew(static_cast<std::size_t>(m), 0);
    for (int j : newSlots) isNew[static_cast<std::size_t>(j)] = 1;

    for (const DPState& s : child.states) {
        DPState t;
        for (int i = 0; i < n; ++i) {
            if (i == ai) {
                t.a.push_back(ColorSet{});
                t.b.push_back(ColorSet{});
            } else {
                int ci = i < ai ? i : i - 1;
                t.a.push_back(s.a[static_cast<std::size_t>(ci)]);
                t.b.push_back(s.b[static_cast<std::size_t>(ci)]);
            }
        }
        for (int u : newEnd) t.b[static_cast<std::size_t>(ai)] |= t.a[static_cast<std::size_t>(u)];
        t.edge_colors.assign(static_cast<std::size_t>(m), 0);
        for (int j = 0; j < m; ++j)
            if (!isNew[static_cast<std::size_t>(j)])
                t.edge_colors[static_cast<std::size_t>(j)] = s.edge_colors[static_cast<std::size_t>(fromChild[static_cast<std::size_t>(j)])];
        // Colors forbidden on ua by condition (ii).
        std::vector<ColorSet> banned(static_cast<std::size_t>(d));
        for (int x = 0; x < d; ++x) {
            ColorSet f = t.b[static_cast<std::size_t>(newEnd[static_cast<std::size_t>(x)])];
            for (int y = 0; y < d; ++y)
                if (y != x) f |= t.a[static_cast<std::size_t>(newEnd[static_cast<std::size_t>(y)])];
            banned[static_cast<std::size_t>(x)] = f;
        }
        std::vector<int>& col = t.edge_colors;
        auto ok = [&](int slot, int c) {
            for (int o : bagConflicts[static_cast<std::size_t>(slot)])
                if (col[static_cast<std::size_t>(o)] == c) return false;
            return true;
        };
        std::function<void(int)> extend = [&](int x) {
            if (x == d) {
                out.states.insert(t);
                return;
            }
            int slot = newSlots[static_cast<std::size_t>(x)];
            for (int c = 1; c <= k; ++c) {
                if (banned[static_cast<std::size_t>(x)].contains(c) || !ok(slot, c)) continue;
                col[static_cast<std::size_t>(slot)] = c;
                extend(x + 1);
                col[static_cast<std::size_t>(slot)] = 0;
            }
        };
        extend(0);
    }
    return out;
}

/// Merges two tables over the same bag. With `strict`, an edge reaching a
/// bag vertex u from one subtree must also avoid the colors the other subtree
/// places at distance two from u.
inline StateTable transition_join(const StateTable& left, const StateTable& right, const Graph& g, bool strict) {
    if (left.bag != right.bag) throw Error(ErrorCode::DecompositionMismatch, "join children have different bags");
    StateTable out;
    out.bag = left.bag;
    out.bag_edges = left.bag_edges;
    const int n = static_cast<int>(out.bag.size());
    std::vector<std::pair<int, int>> edgeEnds;
    for (EdgeId e : out.bag_edges) edgeEnds.emplace_back(out.index_of(g.edge(e).u), out.index_of(g.edge(e).v));

    std::map<std::vector<int>, std::vector<const DPState*>> byColors;
    for (const DPState& s : right.states) byColors[s.edge_colors].push_back(&s);
    for (const DPState& s1 : left.states) {
        auto it = byColors.find(s1.edge_colors);
        if (it == byColors.end()) continue;
        for (const DPState* s2 : it->second) {
            bool good = true;
            if (strict)
                for (int i = 0; i < n && good; ++i) {
                    auto ui = static_cast<std::size_t>(i);
                    if (s1.a[ui].intersects(s2->b[ui]) || s2->a[ui].intersects(s1.b[ui])) good = false;
                }
            if (!good) continue;
            DPState t;
            t.edge_colors = s1.edge_colors;
            for (int i = 0; i < n; ++i) {
                t.a.push_back(s1.a[static_cast<std::size_t>(i)] | s2->a[static_cast<std::size_t>(i)]);
                t.b.push_back(s1.b[static_cast<std::size_t>(i)] | s2->b[static_cast<std::size_t>(i)]);
            }
            for (auto [x, y] : edgeEnds)
                if (t.a[static_cast<std::size_t>(x)].intersects(t.a[static_cast<std::size_t>(y)])) {
                    good = false;
                    break;
                }
            if (good) out.states.insert(std::move(t));
        }
    }
    return out;
}

struct FptOptions {
    bool strict = true;
    bool keep_tables = false;  ///< retain every node's table in the result
    SearchLimits limits;
};

struct FptRun {
    SolveResult result;
    std::vector<StateTable> tables;  ///< per nice node, when kept
    std::size_t largest_table = 0;
};

inline FptRun fpt_run(const Graph& g, const NiceDecomposition& nd, int k, FptOptions opt = {}) {
    if (auto defect = nice_defect(g, nd)) throw Error(ErrorCode::DecompositionMismatch, *defect);
    if (k < 1 || k > ColorSet::capacity) throw Error(ErrorCode::BadParams, "k must lie in 1..128");
    detail::Stopwatch clock;
    FptRun run;
    std::vector<StateTable> tables(static_cast<std::size_t>(nd.node_count()));
    std::uint64_t total = 0;
    for (int t = 0; t < nd.node_count(); ++t) {
        if (opt.limits.deadline && std::chrono::steady_clock::now() > *opt.limits.deadline) {
            run.result.answer = Answer::Unknown;
            run.result.stats = {total, clock.seconds()};
            return run;
        }
        const NiceNode& x = nd.nodes[static_cast<std::size_t>(t)];
        auto child = [&](std::size_t i) -> StateTable& { return tables[static_cast<std::size_t>(x.children[i])]; };
        switch (x.kind) {
        case NodeKind::Leaf: tables[static_cast<std::size_t>(t)] = table_leaf(); break;
        case NodeKind::Introduce: tables[static_cast<std::size_t>(t)] = transition_introduce(child(0), x.vertex, g, k); break;
        case NodeKind::Forget: tables[static_cast<std::size_t>(t)] = transition_forget(child(0), x.vertex, g); break;
        case NodeKind::Join: tables[static_cast<std::size_t>(t)] = transition_join(child(0), child(1), g, opt.strict); break;
        }
        total += static_cast<std::uint64_t>(tables[static_cast<std::size_t>(t)].size());
        run.largest_table = std::max(run.largest_table, tables[static_cast<std::size_t>(t)].states.size());
        if (!opt.keep_tables)
            for (int c : x.children) tables[static_cast<std::size_t>(c)] = StateTable{};
        // node_limit caps the number of states built across all tables.
        if (opt.limits.node_limit != 0 && total > opt.limits.node_limit) {
            run.result.answer = Answer::Unknown;
            run.result.stats = {total, clock.seconds()};
            return run;
        }
    }
    run.result.answer = tables.back().states.empty() ? Answer::No : Answer::Yes;
    run.result.stats = {total, clock.seconds()};
    if (opt.keep_tables) run.tables = std::move(tables);
    return run;
}

/// Decision only; a yes answer carries no witness.
inline SolveResult fpt_decide(const Graph& g, const NiceDecomposition& nd, int k, bool strict = true,
                              SearchLimits limits = {}) {
    return fpt_run(g, nd, k, FptOptions{strict, false, limits}).result;
}

} // namespace injec
