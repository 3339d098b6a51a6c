#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace injec;

namespace {

NiceDecomposition nice_of(const Graph& g) { return nicefy(heuristic_decomposition(g)); }

DPState state(std::vector<ColorSet> a, std::vector<ColorSet> b, std::vector<int> edges) {
    return DPState{std::move(a), std::move(b), std::move(edges)};
}

std::vector<VertexId> subtree_vertices(const NiceDecomposition& nd, int t) {
    std::set<VertexId> out;
    std::vector<int> stack{t};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        const auto& node = nd.nodes[static_cast<std::size_t>(x)];
        out.insert(node.bag.begin(), node.bag.end());
        for (int c : node.children) stack.push_back(c);
    }
    return {out.begin(), out.end()};
}

/// All states obtained by projecting injective k-colorings of G_{<=t}.
std::set<DPState> projected_states(const Graph& g, const NiceDecomposition& nd, int t, int k) {
    const auto& bag = nd.nodes[static_cast<std::size_t>(t)].bag;
    auto below = subtree_vertices(nd, t);
    std::vector<char> inSub(static_cast<std::size_t>(g.vertex_count()), 0), inBag(inSub);
    for (VertexId v : below) inSub[static_cast<std::size_t>(v)] = 1;
    for (VertexId v : bag) inBag[static_cast<std::size_t>(v)] = 1;
    auto forgotten = [&](VertexId v) { return inSub[static_cast<std::size_t>(v)] && !inBag[static_cast<std::size_t>(v)]; };

    std::vector<std::pair<int, int>> pairs;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (inSub[static_cast<std::size_t>(g.edge(e).u)] && inSub[static_cast<std::size_t>(g.edge(e).v)])
            pairs.emplace_back(g.edge(e).u, g.edge(e).v);
    Graph sub = build_graph(g.vertex_count(), std::span<const std::pair<int, int>>(pairs));
    auto bagEdges = bag_edges(g, bag);

    std::set<DPState> out;
    for_each_coloring(conflict_graph(sub).adjacency, k, [&](std::span<const int> c) {
        auto color = [&](VertexId x, VertexId y) { return c[static_cast<std::size_t>(*sub.find_edge(x, y))]; };
        DPState s;
        for (VertexId u : bag) {
            ColorSet A, B;
            for (VertexId w : sub.neighbors(u))
                if (forgotten(w)) A.insert(color(u, w));
            for (VertexId z : sub.neighbors(u))
                for (VertexId w : sub.neighbors(z))
                    if (w != u && (forgotten(z) || forgotten(w))) B.insert(color(z, w));
            s.a.push_back(A);
            s.b.push_back(B);
        }
        for (EdgeId e : bagEdges) s.edge_colors.push_back(color(g.edge(e).u, g.edge(e).v));
        out.insert(std::move(s));
        return true;
    });
    return out;
}

} // namespace

TEST(Leaf, SingleEmptyState) {
    auto t = table_leaf();
    ASSERT_EQ(t.size(), 1);
    const DPState& s = *t.states.begin();
    EXPECT_TRUE(s.a.empty());
    EXPECT_TRUE(s.b.empty());
    EXPECT_TRUE(s.edge_colors.empty());
    EXPECT_TRUE(t.bag.empty());
}

TEST(Forget, IsolatedVertexJustDrops) {
    Graph g = build_graph(3, {{0, 1}});
    StateTable child;
    child.bag = {0, 1, 2};
    child.bag_edges = bag_edges(g, child.bag);
    child.states.insert(state({ColorSet::of({2}), ColorSet{}, ColorSet::of({1})}, {ColorSet::of({3}), ColorSet{}, ColorSet{}}, {1}));
    auto out = transition_forget(child, 2, g);
    ASSERT_EQ(out.size(), 1);
    EXPECT_EQ(*out.states.begin(), state({ColorSet::of({2}), ColorSet{}}, {ColorSet::of({3}), ColorSet{}}, {1}));
}

TEST(Forget, TriangleExample) {
    // u = 0, w = 1, a = 2; bag edges in order uw, ua, wa.
    Graph g = complete_graph(3);
    StateTable child;
    child.bag = {0, 1, 2};
    child.bag_edges = bag_edges(g, child.bag);
    child.states.insert(state({{}, {}, {}}, {{}, {}, {}}, {3, 1, 2}));
    auto out = transition_forget(child, 2, g);
    ASSERT_EQ(out.size(), 1);
    const DPState& s = *out.states.begin();
    EXPECT_EQ(s.a[0], ColorSet::of({1}));
    EXPECT_EQ(s.b[0], ColorSet::of({2}));
    EXPECT_EQ(s.a[1], ColorSet::of({2}));
    EXPECT_EQ(s.b[1], ColorSet::of({1}));
    EXPECT_EQ(s.edge_colors, std::vector<int>{3});

    // The same state comes from projecting the full coloring.
    NiceDecomposition nd;
    nd.nodes = {{NodeKind::Leaf, -1, {}, {}},
                {NodeKind::Introduce, 0, {0}, {0}},
                {NodeKind::Introduce, 1, {0, 1}, {1}},
                {NodeKind::Introduce, 2, {0, 1, 2}, {2}},
                {NodeKind::Forget, 2, {0, 1}, {3}}};
    auto projected = projected_states(g, nd, 4, 3);
    EXPECT_TRUE(projected.count(s));
}

TEST(Forget, MergingStatesShrinksTable) {
    // a = 2 hangs off u = 0 only; two child states differ in nothing that
    // survives except through A_u, which both give color 1.
    Graph g = build_graph(3, {{0, 2}});
    StateTable child;
    child.bag = {0, 2};
    child.bag_edges = bag_edges(g, child.bag);
    child.states.insert(state({{}, ColorSet::of({2})}, {{}, {}}, {1}));
    child.states.insert(state({{}, ColorSet::of({3})}, {{}, {}}, {1}));
    auto out = transition_forget(child, 2, g);
    EXPECT_EQ(out.size(), child.size() - 1);
}

TEST(Introduce, IsolatedVertexKeepsTableSize) {
    Graph g = build_graph(3, {{0, 1}});
    StateTable child;
    child.bag = {0, 1};
    child.bag_edges = bag_edges(g, child.bag);
    child.states.insert(state({{}, {}}, {{}, {}}, {1}));
    child.states.insert(state({{}, {}}, {{}, {}}, {2}));
    auto out = transition_introduce(child, 2, g, 3);
    EXPECT_EQ(out.size(), 2);
    for (const auto& s : out.states) {
        EXPECT_TRUE(s.a[2].empty());
        EXPECT_TRUE(s.b[2].empty());
    }
}

TEST(Introduce, TwoSuccessorsExample) {
    // u = 0 with forgotten neighbours 2, 3 and edge 2-4 beyond; a = 1.
    Graph g = build_graph(5, {{0, 1}, {0, 2}, {0, 3}, {2, 4}});
    StateTable child;
    child.bag = {0};
    child.bag_edges = {};
    child.states.insert(state({ColorSet::of({1, 2})}, {ColorSet::of({3})}, {}));
    auto out = transition_introduce(child, 1, g, 3);
    ASSERT_EQ(out.size(), 2);
    std::set<int> colors;
    for (const auto& s : out.states) {
        colors.insert(s.edge_colors.at(0));
        EXPECT_EQ(s.b[1], ColorSet::of({1, 2}));
    }
    EXPECT_EQ(colors, (std::set<int>{1, 2}));

    // Whole-graph check: with 02=1, 03=2, 24=3 fixed, ua has exactly two colors.
    auto adj = conflict_graph(g).adjacency;
    std::vector<int> pre(static_cast<std::size_t>(g.edge_count()), 0);
    pre[static_cast<std::size_t>(*g.find_edge(0, 2))] = 1;
    pre[static_cast<std::size_t>(*g.find_edge(0, 3))] = 2;
    pre[static_cast<std::size_t>(*g.find_edge(2, 4))] = 3;
    EXPECT_EQ(for_each_coloring(adj, 3, [](std::span<const int>) { return true; }, pre), 2u);
}

TEST(Introduce, DeadEndWhenKTooSmall) {
    Graph g = build_graph(2, {{0, 1}});
    StateTable child;
    child.bag = {0};
    // Both colors already sit at distance two from 0, so the new edge has none left.
    child.states.insert(state({ColorSet::of({1})}, {ColorSet::of({1, 2})}, {}));
    EXPECT_EQ(transition_introduce(child, 1, g, 2).size(), 0);
    child.states.clear();
    child.states.insert(state({ColorSet::of({1})}, {ColorSet::of({2})}, {}));
    EXPECT_EQ(transition_introduce(child, 1, g, 2).size(), 1);
}

TEST(Join, EmptySetsChildPassesThrough) {
    Graph g = build_graph(2, {{0, 1}});
    StateTable left, right;
    left.bag = right.bag = {0, 1};
    left.bag_edges = right.bag_edges = bag_edges(g, left.bag);
    left.states.insert(state({ColorSet::of({2}), ColorSet::of({3})}, {ColorSet::of({3}), {}}, {1}));
    left.states.insert(state({ColorSet::of({3}), {}}, {{}, {}}, {2}));
    right.states.insert(state({{}, {}}, {{}, {}}, {1}));
    right.states.insert(state({{}, {}}, {{}, {}}, {2}));
    for (bool strict : {true, false}) EXPECT_EQ(transition_join(left, right, g, strict).states, left.states);
}

TEST(Join, SharedColorAcrossBagEdgeRejected) {
    Graph g = build_graph(2, {{0, 1}});
    StateTable left, right;
    left.bag = right.bag = {0, 1};
    left.bag_edges = right.bag_edges = bag_edges(g, left.bag);
    left.states.insert(state({ColorSet::of({1}), {}}, {{}, {}}, {2}));
    right.states.insert(state({{}, ColorSet::of({1})}, {{}, {}}, {2}));
    for (bool strict : {true, false}) EXPECT_EQ(transition_join(left, right, g, strict).size(), 0);
}

TEST(Join, StrictRejectsCrossSubtreeDistanceTwo) {
    Graph g = build_graph(1, {});
    StateTable left, right;
    left.bag = right.bag = {0};
    left.states.insert(state({ColorSet::of({1})}, {{}}, {}));
    right.states.insert(state({{}}, {ColorSet::of({1})}, {}));
    EXPECT_EQ(transition_join(left, right, g, true).size(), 0);
    EXPECT_EQ(transition_join(left, right, g, false).size(), 1);
}

TEST(Join, MismatchedBagsThrow) {
    Graph g = build_graph(2, {});
    StateTable left, right;
    left.bag = {0};
    right.bag = {1};
    EXPECT_THROW(transition_join(left, right, g, true), Error);
}

TEST(FptDecide, Triangle) {
    Graph g = complete_graph(3);
    auto nd = nice_of(g);
    EXPECT_EQ(nd.width(), 2);
    EXPECT_EQ(fpt_decide(g, nd, 3).answer, Answer::Yes);
    EXPECT_EQ(fpt_decide(g, nd, 2).answer, Answer::No);
}

TEST(FptDecide, P4) {
    Graph g = path_graph(4);
    EXPECT_EQ(fpt_decide(g, nice_of(g), 2).answer, Answer::Yes);
    EXPECT_EQ(fpt_decide(g, nice_of(g), 1).answer, Answer::No);
}

TEST(FptDecide, K4SixColors) {
    Graph g = complete_graph(4);
    EXPECT_EQ(fpt_decide(g, nice_of(g), 5).answer, Answer::No);
    EXPECT_EQ(fpt_decide(g, nice_of(g), 6).answer, Answer::Yes);
}

TEST(FptDecide, RejectsForeignDecomposition) {
    try {
        fpt_decide(complete_graph(4), nice_of(path_graph(4)), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DecompositionMismatch);
    }
}

TEST(FptDecide, NodeLimitGivesUnknown) {
    Graph g = named_fixture("prism");
    FptOptions opt;
    opt.limits.node_limit = 5;
    EXPECT_EQ(fpt_run(g, nice_of(g), 6, opt).result.answer, Answer::Unknown);
}

// Tables equal the projections of all injective colorings of G_{<=t} in
// strict mode; the literal join can only add states.
TEST(Definitional, TablesEqualProjectedColorings) {
    std::mt19937_64 rng(51);
    int checkedNodes = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracle::random_sparse(rng, 4 + trial % 5, 9);
        int k = 2 + trial % 2;
        auto nd = nice_of(g);
        for (bool strict : {true, false}) {
            FptOptions opt;
            opt.strict = strict;
            opt.keep_tables = true;
            auto run = fpt_run(g, nd, k, opt);
            for (int t = 0; t < nd.node_count(); ++t) {
                auto expect = projected_states(g, nd, t, k);
                const auto& got = run.tables[static_cast<std::size_t>(t)].states;
                if (strict) {
                    ASSERT_EQ(got, expect) << io::graph_to_string(g) << " node " << t << " k=" << k;
                } else {
                    for (const auto& s : expect) ASSERT_TRUE(got.count(s));
                }
                ++checkedNodes;
            }
        }
    }
    EXPECT_GT(checkedNodes, 500);
}

TEST(Differential, StrictMatchesExactSolver) {
    std::mt19937_64 rng(52);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 150; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);
        Graph g = random::gnm(n, std::min(static_cast<int>(rng() % 17), n * (n - 1) / 2), rng());
        int k = 2 + trial % 3;
        auto exact = injective_decide(g, k);
        auto fpt = fpt_decide(g, nice_of(g), k, true);
        ASSERT_EQ(fpt.answer, exact.answer) << io::graph_to_string(g) << "k=" << k;
        (exact.yes() ? yes : no)++;
    }
    EXPECT_GT(yes, 20);
    EXPECT_GT(no, 20);
}

TEST(Differential, LiteralJoinNeverSaysNoWrongly) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random::gnm(10, static_cast<int>(rng() % 15), rng());
        int k = 2 + trial % 2;
        if (injective_decide(g, k).yes()) {
            ASSERT_TRUE(fpt_decide(g, nice_of(g), k, false).yes());
        }
    }
}

TEST(Tables, SizeBoundAndDeterminism) {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random::gnm(9, 12, rng());
        auto nd = nice_of(g);
        const int k = 3;
        FptOptions opt;
        opt.keep_tables = true;
        auto a = fpt_run(g, nd, k, opt);
        auto b = fpt_run(g, nd, k, opt);
        ASSERT_EQ(a.tables.size(), b.tables.size());
        for (std::size_t t = 0; t < a.tables.size(); ++t) {
            ASSERT_EQ(a.tables[t].states, b.tables[t].states);
            const auto& tab = a.tables[t];
            double bound = std::pow(std::pow(2.0, 2 * k), static_cast<double>(tab.bag.size())) *
                           std::pow(static_cast<double>(k), static_cast<double>(tab.bag_edges.size()));
            ASSERT_LE(static_cast<double>(tab.size()), bound);
            for (const auto& s : tab.states) {
                ASSERT_EQ(s.a.size(), tab.bag.size());
                ASSERT_EQ(s.b.size(), tab.bag.size());
                ASSERT_EQ(s.edge_colors.size(), tab.bag_edges.size());
            }
        }
    }
}
