#include "cycleweave/edge_list.hpp"
#include "cycleweave/gen.hpp"
#include "cycleweave/graph.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

using namespace cycleweave;

namespace {

Graph triangle() { return Graph::from_edge_list(3, {{0, 1}, {1, 2}, {2, 0}}); }

} // namespace

TEST_CASE("from_edge_list basics") {
    Graph g = Graph::from_edge_list(2, {{0, 1}});
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);

    Graph dedup = Graph::from_edge_list(3, {{0, 1}, {1, 0}});
    CHECK(dedup.edge_count() == 1);

    CHECK_THROWS_AS(Graph::from_edge_list(3, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(Graph::from_edge_list(3, {{0, 5}}), ValidationError);
}

TEST_CASE("degree") {
    CHECK(triangle().degree(0) == 2);
    Graph isolated = Graph::from_edge_list(2, {});
    CHECK(isolated.degree(0) == 0);
    Graph star = Graph::from_edge_list(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK(star.degree(0) == 5);
    CHECK_THROWS_AS(star.degree(6), ValidationError);
}

TEST_CASE("common_neighbors") {
    Graph c4 = Graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(c4.common_neighbors(0, 2).ids == std::vector<VertexId>{1, 3});
    CHECK(c4.codegree(0, 2) == 2);

    Graph path = Graph::from_edge_list(3, {{0, 1}, {1, 2}});
    CHECK(path.common_neighbors(0, 2).ids == std::vector<VertexId>{1});

    Graph two_edges = Graph::from_edge_list(4, {{0, 1}, {2, 3}});
    CHECK(two_edges.codegree(0, 2) == 0);

    CHECK_THROWS_AS(c4.common_neighbors(1, 1), ValidationError);
}

TEST_CASE("induced_subgraph") {
    Graph t = triangle();
    auto all = induced_subgraph(t, VertexSet({0, 1, 2}));
    CHECK(all.graph.edge_count() == 3);
    CHECK(all.to_original == std::vector<VertexId>{0, 1, 2});

    auto pair = induced_subgraph(t, VertexSet({0, 1}));
    CHECK(pair.graph.edge_count() == 1);
    CHECK(pair.graph.vertex_count() == 2);
    CHECK(pair.to_original[0] == 0);
    CHECK(pair.to_local[2] == -1);

    auto empty = induced_subgraph(t, VertexSet({}));
    CHECK(empty.graph.vertex_count() == 0);
    CHECK(empty.graph.edge_count() == 0);
}

TEST_CASE("edge_count") {
    CHECK(Graph::from_edge_list(4, {}).edge_count() == 0);
    CHECK(uniform_random(5, Rational(1), 0).edge_count() == 10);
    CHECK(complete_bipartite(3, 3).edge_count() == 9);
}

TEST_CASE("bipartite_view drops in-side edges and normalizes") {
    Graph t = triangle();
    BipartiteGraph h = bipartite_view(t, VertexSet({0}), VertexSet({1, 2}));
    // (1,2) is inside one side and vanishes; |B| <= |A| forces the swap
    CHECK(h.edge_count() == 2);
    CHECK(h.side_a().ids == std::vector<VertexId>{1, 2});
    CHECK(h.side_b().ids == std::vector<VertexId>{0});

    Graph k22 = complete_bipartite(2, 2).to_graph();
    BipartiteGraph hk = bipartite_view(k22, VertexSet({0, 1}), VertexSet({2, 3}));
    CHECK(hk.edge_count() == 4);
    CHECK(hk.side_a().ids == std::vector<VertexId>{0, 1}); // tie keeps input order

    CHECK_THROWS_AS(bipartite_view(t, VertexSet({0, 1}), VertexSet({1, 2})), ValidationError);
}

TEST_CASE("bipartite induce keeps side roles") {
    BipartiteGraph k33 = complete_bipartite(3, 3);
    BipartiteGraph sub = k33.induce(VertexSet({0, 1}), VertexSet({3, 4, 5}));
    CHECK(sub.side_a().ids == std::vector<VertexId>{0, 1});
    CHECK(sub.side_b().size() == 3);
    CHECK(sub.edge_count() == 6);
    CHECK_THROWS_AS(k33.induce(VertexSet({3}), VertexSet({0})), ValidationError);
}

TEST_CASE("graph invariants on random instances") {
    std::mt19937_64 seeds(7);
    for (int trial = 0; trial < 20; ++trial) {
        VertexId n = 2 + static_cast<VertexId>(seeds() % 40);
        Graph g = uniform_random(n, Rational(1, 2), seeds());

        std::int64_t degree_sum = 0;
        for (VertexId v = 0; v < n; ++v) {
            degree_sum += g.degree(v);
            for (VertexId u : g.neighbors(v)) {
                CHECK(u != v);
                CHECK(g.has_edge(u, v));
            }
        }
        CHECK(degree_sum == 2 * g.edge_count());

        for (int probe = 0; probe < 10; ++probe) {
            VertexId u = static_cast<VertexId>(seeds() % n);
            VertexId v = static_cast<VertexId>(seeds() % n);
            if (u == v)
                continue;
            CHECK(g.codegree(u, v) <= std::min(g.degree(u), g.degree(v)));
        }
    }
}

TEST_CASE("edge list io round trip") {
    Graph k5 = uniform_random(5, Rational(1), 0);
    std::ostringstream out;
    write_edge_list(out, k5);
    std::istringstream in(out.str());
    auto read = read_edge_list(in);
    CHECK_FALSE(read.warning.has_value());
    CHECK(read.graph.edge_count() == 10);
    CHECK(read.graph.edges() == k5.edges());
}

TEST_CASE("edge list reader tolerates comments and flags mismatches") {
    std::istringstream ok("# a comment\n3 2\n0 1\n# another\n1 2\n");
    auto r = read_edge_list(ok);
    CHECK(r.graph.edge_count() == 2);
    CHECK_FALSE(r.warning.has_value());

    std::istringstream mismatch("3 5\n0 1\n");
    auto m = read_edge_list(mismatch);
    CHECK(m.graph.edge_count() == 1);
    CHECK(m.warning.has_value());

    std::istringstream selfloop("2 1\n1 1\n");
    CHECK_THROWS_WITH_AS(read_edge_list(selfloop), "line 2: self-loop at vertex 1", ValidationError);

    std::istringstream empty("# only comments\n");
    CHECK_THROWS_AS(read_edge_list(empty), ValidationError);

    std::istringstream junk("3 1\n0 x\n");
    CHECK_THROWS_AS(read_edge_list(junk), ValidationError);
}
