#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace injec;

namespace {

void expect_witness(const Graph& g, const SolveResult& r, int k) {
    ASSERT_TRUE(r.yes());
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(r.witness->total());
    EXPECT_LE(r.witness->max_color(), k);
    EXPECT_TRUE(verify_injective(g, *r.witness).empty());
    EXPECT_TRUE(oracle::is_injective(g, std::vector<int>(r.witness->values().begin(), r.witness->values().end())));
}

} // namespace

TEST(InjectiveDecide, K4NeedsSix) {
    Graph g = complete_graph(4);
    EXPECT_EQ(injective_decide(g, 5).answer, Answer::No);
    expect_witness(g, injective_decide(g, 6), 6);
}

TEST(InjectiveDecide, PrismNeedsSix) {
    Graph g = named_fixture("prism");
    EXPECT_EQ(injective_decide(g, 5).answer, Answer::No);
    expect_witness(g, injective_decide(g, 6), 6);
}

TEST(InjectiveDecide, C4) {
    Graph g = cycle_graph(4);
    EXPECT_TRUE(oracle::injective_witness(g, 2).has_value());
    EXPECT_FALSE(oracle::injective_witness(g, 1).has_value());
    expect_witness(g, injective_decide(g, 2), 2);
    EXPECT_EQ(injective_decide(g, 1).answer, Answer::No);
}

TEST(InjectiveDecide, AgreesWithBruteForce) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 250; ++trial) {
        Graph g = oracle::random_sparse(rng, 3 + trial % 6, 8);
        for (int k = 1; k <= 3; ++k) {
            bool expect = oracle::injective_witness(g, k).has_value();
            auto r = injective_decide(g, k);
            ASSERT_EQ(r.yes(), expect) << io::graph_to_string(g) << "k=" << k;
            if (r.yes()) expect_witness(g, r, k);
        }
    }
}

TEST(InjectiveDecide, Monotone) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = oracle::random_graph(rng, 8, 0.4);
        int chi = injective_chromatic(g);
        for (int k = std::max(chi, 1); k <= chi + 3; ++k) ASSERT_TRUE(injective_decide(g, k).yes());
        if (chi > 1) {
            ASSERT_FALSE(injective_decide(g, chi - 1).yes());
        }
    }
}

TEST(InjectiveDecide, TimeoutIsUnknown) {
    SearchLimits lim;
    lim.node_limit = 2;
    auto r = injective_decide(named_fixture("petersen"), 4, lim);
    EXPECT_EQ(r.answer, Answer::Unknown);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(InjectiveChromatic, SmallValues) {
    EXPECT_EQ(oracle::injective_chromatic(complete_graph(3)), 3);
    EXPECT_EQ(injective_chromatic(complete_graph(3)), 3);
    EXPECT_EQ(oracle::injective_chromatic(cycle_graph(5)), 3);
    EXPECT_EQ(injective_chromatic(cycle_graph(5)), 3);
    EXPECT_EQ(injective_chromatic(star_graph(6)), 1);
    EXPECT_EQ(injective_chromatic(complete_graph(4)), 6);
    EXPECT_EQ(injective_chromatic(named_fixture("prism")), 6);
}

TEST(InjectiveChromatic, AgreesWithBruteForce) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 120; ++trial) {
        Graph g = oracle::random_sparse(rng, 3 + trial % 5, 7);
        ASSERT_EQ(injective_chromatic(g), oracle::injective_chromatic(g)) << io::graph_to_string(g);
    }
}

TEST(Greedy, CubicWithinNine) {
    for (const char* name : {"K4", "prism", "petersen", "cube", "K33"}) {
        Graph g = named_fixture(name);
        Coloring c = greedy_injective(g);
        EXPECT_LE(c.max_color(), 9) << name;
        EXPECT_TRUE(verify_injective(g, c).empty()) << name;
    }
}

TEST(Greedy, StarUsesOneColor) {
    Coloring c = greedy_injective(star_graph(7));
    EXPECT_EQ(c.max_color(), 1);
    EXPECT_EQ(c.distinct_colors(), 1);
}

// Regression value pinned from the canonical edge order.
TEST(Greedy, K4RegressionValue) {
    Graph g = complete_graph(4);
    Coloring c = greedy_injective(g);
    EXPECT_TRUE(verify_injective(g, c).empty());
    EXPECT_GE(c.max_color(), 6);
    EXPECT_LE(c.max_color(), 9);
    EXPECT_EQ(c.max_color(), 6);
    EXPECT_EQ(std::vector<int>(c.values().begin(), c.values().end()), (std::vector<int>{1, 2, 3, 4, 5, 6}));
}

TEST(Greedy, LeastAvailableColorInEdgeOrder) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = oracle::random_graph(rng, 9, 0.35);
        Coloring c = greedy_injective(g);
        auto cg = conflict_graph(g);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            std::set<int> taken;
            for (EdgeId f : cg.adjacency[static_cast<std::size_t>(e)])
                if (f < e) taken.insert(c[f]);
            int least = 1;
            while (taken.count(least)) ++least;
            ASSERT_EQ(c[e], least);
        }
    }
}

TEST(Greedy, BoundFuzz) {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 14);
        Graph g = random::bounded_degree(n, static_cast<int>(rng() % 30), 1 + static_cast<int>(rng() % 5), rng());
        int d = max_degree(g);
        Coloring c = greedy_injective(g);
        ASSERT_LE(c.max_color(), 2 * (d - 1) * (d - 1) + 1);
        ASSERT_TRUE(verify_injective(g, c).empty());
    }
}

TEST(Auxiliary, HexagonGivesTriangle) {
    Graph g = cycle_graph(6);
    std::vector<VertexId> even{0, 2, 4};
    auto aux = build_auxiliary(g, even);
    EXPECT_EQ(aux.graph, complete_graph(3));
    EXPECT_EQ(aux.members, even);
    for (EdgeId e = 0; e < aux.graph.edge_count(); ++e) {
        VertexId b = aux.via[static_cast<std::size_t>(e)];
        EXPECT_TRUE(g.adjacent(b, aux.members[static_cast<std::size_t>(aux.graph.edge(e).u)]));
        EXPECT_TRUE(g.adjacent(b, aux.members[static_cast<std::size_t>(aux.graph.edge(e).v)]));
    }
}

TEST(Auxiliary, StarLeavesGiveTriangle) {
    std::vector<VertexId> leaves{1, 2, 3};
    EXPECT_EQ(build_auxiliary(star_graph(3), leaves).graph, complete_graph(3));
}

TEST(Auxiliary, SingleEdge) {
    std::vector<VertexId> one{0};
    auto aux = build_auxiliary(path_graph(2), one);
    EXPECT_EQ(aux.graph.vertex_count(), 1);
    EXPECT_EQ(aux.graph.edge_count(), 0);
}

TEST(Auxiliary, RejectsNonBipartition) {
    std::vector<VertexId> part{0, 1};
    EXPECT_THROW(build_auxiliary(path_graph(3), part), Error);
}

TEST(Auxiliary, DistanceTwoDefinitionAndDegreeBound) {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random::bounded_degree(14, 18, 3, rng());
        auto bp = bipartition(g);
        if (!bp) continue;
        auto aux = build_auxiliary(g, bp->a);
        int d = max_degree(g);
        EXPECT_LE(max_degree(aux.graph), d * (d - 1));
        for (std::size_t i = 0; i < bp->a.size(); ++i)
            for (std::size_t j = i + 1; j < bp->a.size(); ++j) {
                bool common = false;
                for (VertexId x : g.neighbors(bp->a[i]))
                    if (g.adjacent(x, bp->a[j])) common = true;
                ASSERT_EQ(aux.graph.adjacent(static_cast<int>(i), static_cast<int>(j)), common);
            }
    }
}

TEST(Girth16, SubdividedK4) {
    Graph g = subdivide(complete_graph(4), 7);
    auto r = girth16_color(g);
    expect_witness(g, r, 3);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Girth16, HexagonLift) {
    Graph g = cycle_graph(6);
    auto r = girth16_color(g);
    expect_witness(g, r, 3);
    EXPECT_EQ(r.witness->distinct_colors(), 3);
    EXPECT_FALSE(r.warnings.empty());
    // Lifted color is the color of the endpoint in the part containing 0.
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        VertexId a = g.edge(e).u % 2 == 0 ? g.edge(e).u : g.edge(e).v;
        for (EdgeId f = 0; f < g.edge_count(); ++f)
            if (g.edge(f).has(a)) {
                EXPECT_EQ((*r.witness)[e], (*r.witness)[f]);
            }
    }
}

TEST(Girth16, OppositeSideAlsoWorks) {
    Graph g = subdivide(named_fixture("cube"), 7);
    expect_witness(g, girth16_color(g, Side::Opposite), 3);
}

TEST(Girth16, Errors) {
    try {
        girth16_color(complete_graph(4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotBipartite);
    }
    try {
        girth16_color(star_graph(4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSubcubic);
    }
}

TEST(Girth16, NoWhenAuxiliaryNotThreeColorable) {
    // Each side of the cube is pairwise at distance two, so G_A = K4.
    Graph g = named_fixture("cube");
    auto r = girth16_color(g);
    EXPECT_EQ(r.answer, Answer::No);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(Fuzz, EveryWitnessVerifies) {
    std::mt19937_64 rng(37);
    int yes = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 13);
        Graph g = random::bounded_degree(n, static_cast<int>(rng() % 20), 4, rng());
        int k = 1 + static_cast<int>(rng() % 8);
        auto r = injective_decide(g, k);
        ASSERT_NE(r.answer, Answer::Unknown);
        if (r.yes()) {
            ++yes;
            ASSERT_TRUE(r.witness.has_value());
            ASSERT_TRUE(verify_injective(g, *r.witness).empty());
            ASSERT_LE(r.witness->max_color(), k);
        }
        Coloring c = greedy_injective(g);
        ASSERT_TRUE(verify_injective(g, c).empty());
    }
    EXPECT_GT(yes, 300);
}

TEST(Fuzz, SqrtHalfKSufficiency) {
    std::mt19937_64 rng(38);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random::bounded_degree(6 + static_cast<int>(rng() % 20), 40, 3, rng());
        ASSERT_LE(max_degree(g), 3);
        ASSERT_TRUE(injective_decide(g, 18).yes());
    }
}

// A diamond with one pendant edge has treewidth two yet needs four colors:
// the pendant edge sees both colors of the diamond's 4-cycle of conflicts and
// the color of the shared diagonal.
TEST(Chromatic, WidthTwoCanNeedFour) {
    Graph g = build_graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}});
    EXPECT_LE(heuristic_decomposition(g).width(), 2);
    EXPECT_EQ(oracle::injective_chromatic(g), 4);
    EXPECT_EQ(injective_chromatic(g), 4);
}
