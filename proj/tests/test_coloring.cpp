#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace injec;

namespace {

ConflictGraph conflicts_of(const std::string& fixture) { return conflict_graph(named_fixture(fixture)); }

std::set<std::pair<EdgeId, EdgeId>> pairs_of(const ConflictGraph& cg) {
    std::set<std::pair<EdgeId, EdgeId>> out;
    for (int e = 0; e < cg.item_count(); ++e)
        for (int f : cg.adjacency[static_cast<std::size_t>(e)])
            if (e < f) out.emplace(e, f);
    return out;
}

Coloring coloring(const std::vector<int>& c, int k) { return Coloring(c, k); }

} // namespace

// ---------------------------------------------------------------------------
// Conflict graph against walk enumeration.

TEST(ConflictGraph, P4HasOnePair) {
    Graph g = path_graph(4);
    auto cg = conflict_graph(g);
    auto expect = oracle::conflict_pairs(g);
    ASSERT_EQ(expect.size(), 1u);
    EXPECT_EQ(pairs_of(cg), expect);
    EXPECT_TRUE(cg.conflicts(*g.find_edge(0, 1), *g.find_edge(2, 3)));
}

TEST(ConflictGraph, TriangleAllPairs) {
    Graph g = complete_graph(3);
    auto expect = oracle::conflict_pairs(g);
    EXPECT_EQ(expect.size(), 3u);
    EXPECT_EQ(pairs_of(conflict_graph(g)), expect);
}

TEST(ConflictGraph, StarHasNone) {
    EXPECT_EQ(conflicts_of("star_4").pair_count(), 0);
    EXPECT_TRUE(oracle::conflict_pairs(star_graph(4)).empty());
}

TEST(ConflictGraph, MatchesWalkEnumerationOnRandomGraphs) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 400; ++trial) {
        Graph g = oracle::random_graph(rng, 2 + trial % 11, 0.15 + 0.05 * (trial % 8));
        ASSERT_EQ(pairs_of(conflict_graph(g)), oracle::conflict_pairs(g)) << io::graph_to_string(g);
    }
}

TEST(ConflictGraph, SymmetricIrreflexiveSorted) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        auto cg = conflict_graph(oracle::random_graph(rng, 10, 0.35));
        for (int e = 0; e < cg.item_count(); ++e) {
            const auto& nb = cg.adjacency[static_cast<std::size_t>(e)];
            ASSERT_TRUE(std::is_sorted(nb.begin(), nb.end()));
            ASSERT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
            for (int f : nb) {
                ASSERT_NE(e, f);
                ASSERT_TRUE(cg.conflicts(f, e));
            }
        }
    }
}

TEST(ConflictGraph, DegreeBound) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = oracle::random_graph(rng, 4 + trial % 12, 0.1 + 0.06 * (trial % 10));
        int d = max_degree(g);
        ASSERT_LE(conflict_graph(g).max_degree(), 2 * (d - 1) * (d - 1)) << io::graph_to_string(g);
    }
    for (const char* name : {"K4", "K5", "prism", "petersen", "cube", "K33"}) {
        Graph g = named_fixture(name);
        int d = max_degree(g);
        EXPECT_LE(conflict_graph(g).max_degree(), 2 * (d - 1) * (d - 1)) << name;
    }
}

TEST(ConflictGraph, ForEachConflictAgreesWithAdjacency) {
    Graph g = named_fixture("petersen");
    auto cg = conflict_graph(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        std::set<EdgeId> seen;
        for_each_conflict(g, e, [&](EdgeId f, EdgeId middle) {
            EXPECT_NE(middle, e);
            EXPECT_NE(middle, f);
            seen.insert(f);
        });
        const auto& nb = cg.adjacency[static_cast<std::size_t>(e)];
        EXPECT_EQ(std::vector<EdgeId>(seen.begin(), seen.end()), nb);
    }
}

// ---------------------------------------------------------------------------
// Verifier.

TEST(VerifyInjective, EdgeGadgetFigureColoring) {
    GadgetInstance gi = gadget_edge_3cubic();
    Coloring c = coloring_from_roles(gi, edge_3cubic_template(), 3);
    ASSERT_TRUE(c.total());
    EXPECT_TRUE(verify_injective(gi.graph, c).empty());
    EXPECT_TRUE(oracle::is_injective(gi.graph, std::vector<int>(c.values().begin(), c.values().end())));
}

TEST(VerifyInjective, P4Monochrome) {
    Graph g = path_graph(4);
    auto v = verify_injective(g, coloring({1, 1, 1}, 1));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].e, *g.find_edge(0, 1));
    EXPECT_EQ(v[0].f, *g.find_edge(2, 3));
    EXPECT_EQ(v[0].middle, *g.find_edge(1, 2));
    EXPECT_EQ(v[0].color, 1);
}

TEST(VerifyInjective, EmptyGraph) { EXPECT_TRUE(verify_injective(build_graph(3, {}), Coloring(0, 1)).empty()); }

TEST(VerifyInjective, PartialColoringRejected) {
    Graph g = path_graph(4);
    try {
        verify_injective(g, coloring({1, 0, 1}, 2));
        FAIL() << "expected PartialColoring";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PartialColoring);
    }
}

TEST(VerifyInjective, ViolationsAreRealConflicts) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = oracle::random_graph(rng, 9, 0.35);
        auto colors = oracle::random_colors(rng, g.edge_count(), 3);
        auto cg = conflict_graph(g);
        for (const auto& v : verify_injective(g, coloring(colors, 3))) {
            ASSERT_LT(v.e, v.f);
            ASSERT_TRUE(cg.conflicts(v.e, v.f));
            ASSERT_EQ(colors[static_cast<std::size_t>(v.e)], v.color);
            ASSERT_EQ(colors[static_cast<std::size_t>(v.f)], v.color);
            const Edge& m = g.edge(v.middle);
            const Edge& e = g.edge(v.e);
            const Edge& f = g.edge(v.f);
            ASSERT_TRUE((e.has(m.u) && f.has(m.v)) || (e.has(m.v) && f.has(m.u)));
            ASSERT_NE(v.middle, v.e);
            ASSERT_NE(v.middle, v.f);
        }
    }
}

// Verifier and conflict graph read the definition independently; each is the
// other's oracle.
TEST(VerifyInjective, OracleDualityTenThousandTrials) {
    std::mt19937_64 rng(25);
    int injectiveSeen = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        int n = 1 + static_cast<int>(rng() % 12);
        Graph g = oracle::random_graph(rng, n, 0.1 + 0.3 * static_cast<double>(rng() % 100) / 100.0);
        int k = 1 + static_cast<int>(rng() % 6);
        auto colors = oracle::random_colors(rng, g.edge_count(), k);
        bool byVerifier = verify_injective(g, coloring(colors, k)).empty();
        bool byConflicts = is_proper(conflict_graph(g).adjacency, colors, k);
        ASSERT_EQ(byVerifier, byConflicts) << io::graph_to_string(g);
        injectiveSeen += byVerifier;
    }
    EXPECT_GT(injectiveSeen, 500);
    EXPECT_LT(injectiveSeen, 9500);
}

// ---------------------------------------------------------------------------
// Exact vertex-coloring engine.

TEST(VertexColorDecide, K4) {
    auto adj = adjacency_of(complete_graph(4));
    EXPECT_FALSE(vertex_color_decide(adj, 3).has_value());
    auto c = vertex_color_decide(adj, 4);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(is_proper(adj, *c, 4));
}

TEST(VertexColorDecide, C5) {
    auto adj = adjacency_of(cycle_graph(5));
    EXPECT_FALSE(vertex_color_decide(adj, 2).has_value());
    auto c = vertex_color_decide(adj, 3);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(is_proper(adj, *c, 3));
}

TEST(VertexColorDecide, AgreesWithExhaustiveSearch) {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 600; ++trial) {
        int n = 1 + trial % 8;
        auto adj = oracle::random_adjacency(rng, n, 0.2 + 0.1 * (trial % 7));
        for (int k = 1; k <= 4; ++k) {
            bool expect = oracle::proper_exists(adj, k);
            auto got = vertex_color_decide(adj, k);
            ASSERT_EQ(got.has_value(), expect) << "n=" << n << " k=" << k;
            if (got) {
                ASSERT_TRUE(oracle::proper(adj, *got));
            }
        }
    }
}

TEST(VertexColorDecide, Deterministic) {
    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 50; ++trial) {
        auto adj = oracle::random_adjacency(rng, 30, 0.2);
        EXPECT_EQ(vertex_color_decide(adj, 5), vertex_color_decide(adj, 5));
    }
}

TEST(VertexColorSearch, PrecolorRespected) {
    auto adj = adjacency_of(cycle_graph(6));
    std::vector<int> pre{2, 0, 0, 3, 0, 0};
    auto r = vertex_color_search(adj, 3, pre);
    ASSERT_EQ(r.status, SearchStatus::Found);
    EXPECT_EQ(r.colors[0], 2);
    EXPECT_EQ(r.colors[3], 3);
    EXPECT_TRUE(is_proper(adj, r.colors, 3));
    std::vector<int> clash{1, 1, 0, 0, 0, 0};
    EXPECT_EQ(vertex_color_search(adj, 3, clash).status, SearchStatus::Infeasible);
}

TEST(VertexColorSearch, NodeLimitReportsTimeout) {
    // Fifteen items with conflict degree 8 cannot be settled in three nodes.
    auto adj = conflict_graph(named_fixture("petersen")).adjacency;
    SearchLimits lim;
    lim.node_limit = 3;
    auto r = vertex_color_search(adj, 4, {}, lim);
    EXPECT_EQ(r.status, SearchStatus::Timeout);
}

TEST(VertexColorSearch, HardInstanceFallsBackAndStaysCorrect) {
    // Reduced instance whose refutation needs the clause-learning fallback.
    auto out = build_reduction_4cubic(named_fixture("petersen"));
    auto r = injective_decide(out.graph, 4, SearchLimits::seconds(120));
    EXPECT_EQ(r.answer, Answer::No);
}

TEST(VertexChromatic, Conventions) {
    EXPECT_EQ(vertex_chromatic(Adjacency{}), 0);
    EXPECT_EQ(vertex_chromatic(Adjacency(3)), 1);
    EXPECT_EQ(vertex_chromatic(adjacency_of(complete_graph(4))), 4);
    EXPECT_EQ(vertex_chromatic(conflict_graph(complete_graph(4)).adjacency), 6);
}

TEST(VertexChromatic, AgreesWithExhaustiveSearch) {
    std::mt19937_64 rng(28);
    for (int trial = 0; trial < 200; ++trial) {
        auto adj = oracle::random_adjacency(rng, 1 + trial % 8, 0.45);
        int expect = 1;
        while (!oracle::proper_exists(adj, expect)) ++expect;
        ASSERT_EQ(vertex_chromatic(adj), expect);
    }
}

// ---------------------------------------------------------------------------
// Enumeration.

TEST(EnumerateColorings, SingleVertex) { EXPECT_EQ(enumerate_colorings(Adjacency(1), 3).size(), 3u); }

TEST(EnumerateColorings, Triangle) {
    auto all = enumerate_colorings(adjacency_of(complete_graph(3)), 3);
    EXPECT_EQ(all.size(), 6u);
    std::set<std::vector<int>> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), 6u);
}

TEST(EnumerateColorings, P4ConflictGraph) {
    auto adj = conflict_graph(path_graph(4)).adjacency;
    EXPECT_EQ(oracle::proper_count(adj, 2), 4u);
    EXPECT_EQ(enumerate_colorings(adj, 2).size(), 4u);
}

TEST(EnumerateColorings, CountsMatchExhaustiveSearch) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        auto adj = oracle::random_adjacency(rng, 1 + trial % 8, 0.35);
        int k = 1 + trial % 4;
        auto all = enumerate_colorings(adj, k);
        ASSERT_EQ(all.size(), oracle::proper_count(adj, k));
        std::set<std::vector<int>> distinct(all.begin(), all.end());
        ASSERT_EQ(distinct.size(), all.size());
        for (const auto& c : all) ASSERT_TRUE(oracle::proper(adj, c));
    }
}

TEST(EnumerateColorings, DeterministicOrder) {
    auto adj = adjacency_of(cycle_graph(6));
    EXPECT_EQ(enumerate_colorings(adj, 3), enumerate_colorings(adj, 3));
}

TEST(EnumerateColorings, CapExceededIsLoud) {
    try {
        enumerate_colorings(Adjacency(6), 3, 10);
        FAIL() << "expected CapExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
    }
}

TEST(EnumerateColorings, PrecolorRestricts) {
    auto adj = adjacency_of(path_graph(3));
    std::vector<int> pre{1, 0, 0};
    std::uint64_t n = for_each_coloring(adj, 3, [](std::span<const int> c) { return c[0] == 1; }, pre);
    EXPECT_EQ(n, 4u);
}

// ---------------------------------------------------------------------------
// Colorings and color sets.

TEST(ColoringType, Basics) {
    Coloring c(4, 3);
    EXPECT_FALSE(c.total());
    c.set(0, 1);
    c.set(1, 3);
    c.set(2, 3);
    c.set(3, 2);
    EXPECT_TRUE(c.total());
    EXPECT_EQ(c.distinct_colors(), 3);
    EXPECT_EQ(c.max_color(), 3);
    EXPECT_THROW(c.set(0, 4), Error);
    EXPECT_THROW(c.set(0, 0), Error);
    EXPECT_THROW(Coloring({1, 5}, 3), Error);
}

TEST(ColoringType, TextRoundTrip) {
    Coloring c({2, 1, 3, 1}, 3);
    std::stringstream s;
    io::write_coloring(s, c);
    EXPECT_EQ(s.str(), "0 2\n1 1\n2 3\n3 1\n");
    EXPECT_EQ(io::read_coloring(s, 4), c);
}

TEST(ColoringType, JsonCarriesEndpoints) {
    Graph g = path_graph(3);
    auto j = io::coloring_to_json(g, Coloring({1, 2}, 2));
    EXPECT_EQ(j["edges"][1]["u"], 1);
    EXPECT_EQ(j["edges"][1]["v"], 2);
    EXPECT_EQ(j["edges"][1]["color"], 2);
}

TEST(ColorSetType, Operations) {
    ColorSet a = ColorSet::of({1, 3, 70});
    ColorSet b = ColorSet::of({3, 128});
    EXPECT_EQ(a.size(), 3);
    EXPECT_TRUE(a.contains(70));
    EXPECT_TRUE(a.intersects(b));
    EXPECT_EQ((a | b).size(), 4);
    EXPECT_EQ((a & b), ColorSet::of({3}));
    EXPECT_EQ((a - b), ColorSet::of({1, 70}));
    EXPECT_EQ(ColorSet::full(128).size(), 128);
    std::vector<int> seen;
    for (int c = a.first(); c != 0; c = a.next(c)) seen.push_back(c);
    EXPECT_EQ(seen, (std::vector<int>{1, 3, 70}));
}

// ---------------------------------------------------------------------------
// Clause-learning fallback.

namespace {

using Clause = std::vector<sat::Lit>;

bool brute_sat(int vars, const std::vector<Clause>& clauses) {
    for (std::uint32_t mask = 0; mask < (1u << vars); ++mask) {
        bool all = true;
        for (const auto& cl : clauses) {
            bool any = false;
            for (sat::Lit l : cl) {
                bool val = (mask >> (l / 2)) & 1u;
                if ((l % 2 == 0) == val) any = true;
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

} // namespace

TEST(SatSolver, RandomThreeSatAgreesWithTruthTable) {
    std::mt19937_64 rng(30);
    int satCount = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int vars = 3 + trial % 10;
        int m = static_cast<int>(vars * 4.3);
        std::vector<Clause> clauses;
        for (int i = 0; i < m; ++i) {
            Clause cl;
            for (int j = 0; j < 3; ++j) {
                int v = static_cast<int>(rng() % static_cast<std::uint64_t>(vars));
                cl.push_back(rng() % 2 ? sat::pos(v) : sat::neg(v));
            }
            clauses.push_back(cl);
        }
        sat::Solver s;
        for (int v = 0; v < vars; ++v) s.new_var();
        for (const auto& cl : clauses) s.add_clause(cl);
        auto r = s.solve({});
        bool expect = brute_sat(vars, clauses);
        ASSERT_EQ(r == sat::Result::Sat, expect);
        if (r == sat::Result::Sat) {
            ++satCount;
            for (const auto& cl : clauses) {
                bool any = false;
                for (sat::Lit l : cl) any |= s.model(l / 2) == (l % 2 == 0);
                ASSERT_TRUE(any);
            }
        }
    }
    EXPECT_GT(satCount, 20);
    EXPECT_LT(satCount, 380);
}

TEST(SatSolver, PigeonholeUnsat) {
    // 6 pigeons, 5 holes.
    const int P = 6, H = 5;
    sat::Solver s;
    auto var = [&](int p, int h) { return p * H + h; };
    for (int i = 0; i < P * H; ++i) s.new_var();
    for (int p = 0; p < P; ++p) {
        Clause cl;
        for (int h = 0; h < H; ++h) cl.push_back(sat::pos(var(p, h)));
        s.add_clause(cl);
    }
    for (int h = 0; h < H; ++h)
        for (int p = 0; p < P; ++p)
            for (int q = p + 1; q < P; ++q) s.add_clause({sat::neg(var(p, h)), sat::neg(var(q, h))});
    EXPECT_EQ(s.solve({}), sat::Result::Unsat);
    EXPECT_GT(s.conflicts(), 0u);
}
