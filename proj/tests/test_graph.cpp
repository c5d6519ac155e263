#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lowtw/error.hpp"
#include "lowtw/graph.hpp"

using namespace lowtw;

namespace {

// 0 -1- 1 -1- 2, plus a heavy shortcut 0 -5- 2 and a pendant 3 off 2.
WeightedGraph small() {
    WeightedGraph g(4);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(0, 2, 5);
    g.add_edge(2, 3, 2);
    return g;
}

}  // namespace

TEST_CASE("dijkstra and distance matrix") {
    auto g = small();
    auto sp = dijkstra(g, 0);
    CHECK(sp.dist == std::vector<Length>{0, 1, 2, 4});
    CHECK(sp.pred[2] == 1);
    DistanceMatrix dm(g);
    CHECK(dm(3, 0) == 4);
    CHECK(dm(1, 3) == 3);
    CHECK(diameter(g) == 4);
    CHECK(eccentricity(g, 1) == 3);
    std::vector<VertexId> sources{0, 3};
    CHECK(dijkstra_distances(g, sources) == std::vector<Length>{0, 1, 2, 0});
}

TEST_CASE("hop bounded distances") {
    auto g = small();
    CHECK(hop_bounded_distance(g, 0, 2, 1) == 5);
    CHECK(hop_bounded_distance(g, 0, 2, 2) == 2);
    CHECK(is_infinite(hop_bounded_distance(g, 0, 3, 1)));
    CHECK(hop_bounded_distance(g, 0, 3, 2) == 7);
    CHECK(hop_bounded_distance(g, 0, 3, 3) == 4);
}

TEST_CASE("structural edges carry no distance") {
    WeightedGraph g(3);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(0, 2, 0, true);
    CHECK(dijkstra_distances(g, 0)[2] == 2);
}

TEST_CASE("disconnected graphs") {
    WeightedGraph g(3);
    g.add_edge(0, 1, 1);
    CHECK_FALSE(g.is_connected());
    CHECK(is_infinite(dijkstra_distances(g, 0)[2]));
    CHECK_THROWS_AS(diameter(g), Error);
}

TEST_CASE("rooted tree") {
    WeightedGraph g(5);
    g.add_edge(0, 1, 2);
    g.add_edge(0, 2, 3);
    g.add_edge(2, 3, 1);
    g.add_edge(2, 4, 4);
    auto t = RootedTree::from_tree_graph(g, 2);
    CHECK(t.root() == 2);
    CHECK(t.parent(1) == 0);
    CHECK(t.parent(0) == 2);
    CHECK(t.depths()[1] == 5);
    CHECK(t.preorder().front() == 2);
    CHECK(t.children(2).size() == 3);
    CHECK(t.to_graph().edge_count() == 4);
    g.add_edge(1, 3, 1);
    CHECK_THROWS_AS(RootedTree::from_tree_graph(g, 0), Error);
}

TEST_CASE("deduplicated keeps the lightest copy") {
    WeightedGraph g(2);
    g.add_edge(0, 1, 3);
    g.add_edge(1, 0, 2);
    auto d = g.deduplicated();
    REQUIRE(d.edge_count() == 1);
    CHECK(d.edge(0).w == 2);
}

TEST_CASE("rotation validation") {
    WeightedGraph g(3);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    CHECK_THROWS_AS(g.set_rotation({{0}, {0}, {1}}), Error);
    g.set_rotation({{0}, {0, 1}, {1}});
    CHECK(g.has_rotation());
}

TEST_CASE("tree decomposition validation") {
    auto g = small();
    TreeDecomposition td;
    td.bags = {{0, 1, 2}, {2, 3}};
    td.tree_edges = {{0, 1}};
    auto rep = validate_tree_decomposition(g, td);
    CHECK(rep.valid());
    CHECK(rep.width == 2);

    TreeDecomposition missing = td;
    missing.bags[1] = {3};
    CHECK_FALSE(validate_tree_decomposition(g, missing).edge_coverage);

    TreeDecomposition split;
    split.bags = {{0, 1, 2}, {3}, {2, 3}};
    split.tree_edges = {{0, 1}, {1, 2}};
    CHECK_FALSE(validate_tree_decomposition(g, split).connected_subtrees);

    TreeDecomposition cyc = td;
    cyc.bags.push_back({0});
    cyc.tree_edges = {{0, 1}, {1, 2}, {2, 0}};
    CHECK_FALSE(validate_tree_decomposition(g, cyc).tree_structure);
}

TEST_CASE("errors carry a kind") {
    try {
        fail(ErrorKind::resource, "too big");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resource);
        CHECK(std::string(e.what()) == "too big");
    }
    WeightedGraph g(2);
    CHECK_THROWS_AS(g.check_vertex(5), Error);
}
