#include <gtest/gtest.h>

#include "support.hpp"

using namespace lrt;

TEST(Parse, SingleEdge) {
    Graph g = parse_graph("2 1\n0 1");
    EXPECT_EQ(g.vertex_count(), 2u);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_TRUE(g.adjacent(0, 1));
}

TEST(Parse, Dart) {
    Graph g = dart();
    EXPECT_EQ(g.vertex_count(), 5u);
    EXPECT_EQ(g.edge_count(), 6u);
    for (auto [a, b] : {std::pair{v0, u0}, {u0, v1}, {v1, u1}, {u1, u0}, {u0, v2}, {v2, u1}})
        EXPECT_TRUE(g.adjacent(a, b));
    EXPECT_FALSE(g.adjacent(v1, v2));
    EXPECT_FALSE(g.adjacent(v0, u1));
}

TEST(Parse, DuplicateEdgeReportsLine) {
    try {
        parse_graph("3 3\n0 1\n0 1\n1 2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
    }
    // reversed orientation is the same edge
    EXPECT_THROW(parse_graph("3 2\n0 1\n1 0"), ParseError);
}

TEST(Parse, Errors) {
    auto line_of = [](const char* text) {
        try {
            parse_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t(999);
    };
    EXPECT_EQ(line_of("3 1\n0 3\n"), 2u);           // out of range
    EXPECT_EQ(line_of("3 1\n# c\n1 1\n"), 3u);      // self-loop
    EXPECT_EQ(line_of("3 1\n0 x\n"), 2u);           // malformed
    EXPECT_EQ(line_of("3 1\n0 1 2\n"), 2u);         // too many fields
    EXPECT_EQ(line_of("3 1\n-1 2\n"), 2u);          // negative
    EXPECT_EQ(line_of("3 1\n0 1\n1 2\n"), 3u);      // extra edge
    EXPECT_EQ(line_of("3\n"), 1u);                  // bad header
    EXPECT_EQ(line_of("3 2\n0 1\n"), 0u);           // missing edges
    EXPECT_EQ(line_of("# only comments\n"), 0u);
}

TEST(Parse, CommentsAndBlankLines) {
    Graph g = parse_graph("# header next\n\n3 2 # n m\n0 1\n\n  1 2  # tail\n");
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(g.adjacent(2, 1));
}

TEST(Parse, WriterRoundTripIsBitExact) {
    Graph g = fig2();
    std::string a = write_graph(g);
    EXPECT_EQ(write_graph(parse_graph(a)), a);
    EXPECT_EQ(parse_graph(a), g);
    EXPECT_EQ(write_graph(parse_graph("3 2\n2 1\n1 0\n")), "3 2\n0 1\n1 2\n");
}

TEST(Graph, AdjacencyInvariants) {
    Graph g = fig2();
    std::size_t sum = 0;
    for (Vertex v = 0; v < 25; ++v) {
        auto nb = g.neighbors(v);
        sum += nb.size();
        EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
        EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
        for (Vertex w : nb) {
            EXPECT_NE(w, v);
            EXPECT_TRUE(g.adjacent(w, v));
        }
    }
    EXPECT_EQ(sum, 2 * g.edge_count());
}

TEST(Components, Examples) {
    auto c = connected_components(Graph(3));
    ASSERT_EQ(c.size(), 3u);
    for (auto& x : c) EXPECT_TRUE(x.trivial());
    auto d = connected_components(dart());
    ASSERT_EQ(d.size(), 1u);
    EXPECT_FALSE(d[0].trivial());
    auto t = connected_components(make(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}));
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0].vertices, (std::vector<Vertex>{0, 1, 2}));
    EXPECT_FALSE(t[1].trivial());
}

TEST(Universal, Examples) {
    EXPECT_EQ(universal_vertex(dart()), std::optional<Vertex>(u0));
    EXPECT_EQ(universal_vertex(Graph(2)), std::nullopt);
    EXPECT_EQ(universal_vertex(complete(3)), std::optional<Vertex>(0));
}

TEST(Universal, IsCutvertexOfConnectedTwinFreeTpg) {
    for (auto& g : enumerate_small_tpgs(7)) {
        if (g.vertex_count() < 3 || connected_components(g).size() != 1) continue;
        auto u = universal_vertex(g);
        ASSERT_TRUE(u);
        std::vector<Vertex> rest;
        for (Vertex v = 0; std::size_t(v) < g.vertex_count(); ++v)
            if (v != *u) rest.push_back(v);
        EXPECT_GT(connected_components(induced_subgraph(g, rest)).size(), 1u);
    }
}

TEST(Twins, Examples) {
    auto k3 = remove_true_twins(complete(3));
    EXPECT_EQ(k3.reduced.vertex_count(), 1u);
    EXPECT_EQ(k3.map.size(), 2u);
    EXPECT_EQ(k3.map.representative, (std::vector<Vertex>{0, 0, 0}));
    auto d = remove_true_twins(dart());
    EXPECT_EQ(d.reduced, dart());
    EXPECT_TRUE(d.map.empty());
    EXPECT_TRUE(brute_twins(dart()).empty());
    auto s = remove_true_twins(gen_star(3));
    EXPECT_EQ(s.reduced, gen_star(3));
    EXPECT_TRUE(s.map.empty());
}

TEST(Twins, MatchesBruteForceOnRandomGraphs) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 400; ++it) {
        std::size_t n = 1 + rng() % 9;
        Graph base = gen_random_tpg(n, rng());
        Graph g = with_twins(base, rng() % 4, rng);
        auto r = remove_true_twins(g);
        EXPECT_TRUE(brute_twins(r.reduced).empty());
        // representatives: kept, smallest in class, and classes are exactly closed-neighbourhood classes
        auto a = matrix(g);
        for (Vertex v = 0; std::size_t(v) < g.vertex_count(); ++v) {
            Vertex rep = r.map.representative[v];
            EXPECT_LE(rep, v);
            EXPECT_EQ(r.map.representative[rep], rep);
            if (rep != v) {
                EXPECT_TRUE(a[v][rep]);
            }
        }
        EXPECT_EQ(r.map.kept.size() + r.map.size(), g.vertex_count());
        EXPECT_TRUE(std::is_sorted(r.map.order.begin(), r.map.order.end()));
    }
}

TEST(Tpg, Obstructions) {
    auto p = check_trivially_perfect(path(4));
    EXPECT_FALSE(p.trivially_perfect);
    EXPECT_FALSE(p.witness.cycle);
    EXPECT_TRUE(is_obstruction(path(4), p.witness));
    auto cyc = make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto c = check_trivially_perfect(cyc);
    EXPECT_FALSE(c.trivially_perfect);
    EXPECT_TRUE(c.witness.cycle);
    EXPECT_TRUE(is_obstruction(cyc, c.witness));
    EXPECT_TRUE(is_trivially_perfect(dart()));
    EXPECT_FALSE(brute_obstruction(dart()).has_value());
}

// every labelled graph on up to 6 vertices
TEST(Tpg, AgreesWithQuadrupleScanExhaustive) {
    for (std::size_t n = 0; n <= 6; ++n) {
        std::vector<std::pair<Vertex, Vertex>> slots;
        for (Vertex a = 0; std::size_t(a) < n; ++a)
            for (Vertex b = a + 1; std::size_t(b) < n; ++b) slots.emplace_back(a, b);
        for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            std::vector<std::pair<Vertex, Vertex>> e;
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (mask >> i & 1) e.push_back(slots[i]);
            Graph g = Graph::from_edges(n, e);
            auto chk = check_trivially_perfect(g);
            bool brute = !brute_obstruction(g).has_value();
            ASSERT_EQ(chk.trivially_perfect, brute) << write_graph(g);
            if (!brute) {
                ASSERT_TRUE(is_obstruction(g, chk.witness)) << write_graph(g);
            }
        }
    }
}

// n = 7 and 8: random graphs plus trivially perfect graphs with one edge flipped
TEST(Tpg, AgreesWithQuadrupleScanSampled) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 30000; ++it) {
        std::size_t n = 7 + it % 2;
        Graph g;
        if (it % 3 == 0) {
            std::vector<std::pair<Vertex, Vertex>> e;
            for (Vertex a = 0; std::size_t(a) < n; ++a)
                for (Vertex b = a + 1; std::size_t(b) < n; ++b)
                    if (rng() % 2) e.emplace_back(a, b);
            g = Graph::from_edges(n, e);
        } else {
            Graph base = with_twins(gen_random_tpg(n - 1, rng()), 1, rng);
            auto e = base.edges();
            Vertex a = Vertex(rng() % n), b = Vertex(rng() % n);
            if (a != b) {
                auto it2 = std::find(e.begin(), e.end(), std::pair{std::min(a, b), std::max(a, b)});
                if (it2 != e.end()) e.erase(it2);
                else e.emplace_back(a, b);
            }
            g = Graph::from_edges(n, e);
        }
        auto chk = check_trivially_perfect(g);
        bool brute = !brute_obstruction(g).has_value();
        ASSERT_EQ(chk.trivially_perfect, brute) << write_graph(g);
        if (!brute) {
            ASSERT_TRUE(is_obstruction(g, chk.witness)) << write_graph(g);
        }
    }
}

TEST(Tpg, ForestMatchesEdges) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Graph g = gen_random_tpg(60, seed);
        auto chk = check_trivially_perfect(g);
        ASSERT_TRUE(chk.trivially_perfect);
        // ancestor pairs are exactly the edges
        std::size_t pairs = 0;
        for (Vertex v = 0; v < 60; ++v)
            for (Vertex a = chk.parent[v]; a != no_vertex; a = chk.parent[a]) {
                EXPECT_TRUE(g.adjacent(a, v));
                ++pairs;
            }
        EXPECT_EQ(pairs, g.edge_count());
    }
}

TEST(Twins, ForestChainsMatchPartitionRefinement) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 400; ++it) {
        Graph g = with_twins(gen_random_tpg(1 + rng() % 30, rng()), rng() % 8, rng);
        auto chk = check_trivially_perfect(g);
        ASSERT_TRUE(chk.trivially_perfect);
        auto [tm, forest] = forest_twin_reduction(chk);
        auto r = remove_true_twins(g);
        EXPECT_EQ(tm.representative, r.map.representative) << write_graph(g);
        EXPECT_EQ(tm.kept, r.map.kept);
        EXPECT_EQ(tm.order, r.map.order);
        // the contracted forest is a forest of the reduced graph
        std::size_t pairs = 0;
        for (Vertex v = 0; std::size_t(v) < tm.kept.size(); ++v)
            for (Vertex a = forest.parent[v]; a != no_vertex; a = forest.parent[a]) {
                EXPECT_TRUE(r.reduced.adjacent(a, v));
                ++pairs;
            }
        EXPECT_EQ(pairs, r.reduced.edge_count());
        EXPECT_EQ(forest.order.size(), tm.kept.size());
    }
    TpgCheck bad;
    EXPECT_THROW(forest_twin_reduction(bad), std::invalid_argument);
}
