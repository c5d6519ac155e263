#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lowtw/error.hpp"
#include "lowtw/planar.hpp"
#include "support.hpp"

using namespace lowtw;

TEST_CASE("faces of a grid") {
    auto g = testing::rect_grid(5, 5);
    CHECK(is_planar_embedding(g));
    auto fs = trace_faces(g);
    // V - E + F = 2 with V = 25, E = 40.
    CHECK(fs.faces.size() == 17);
    CHECK(fs.faces[fs.outer_face()].size() == 16);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        CHECK(fs.edge_faces[e][0] != fs.edge_faces[e][1]);
    }
}

TEST_CASE("K4 drawn with a crossing rotation is not planar") {
    WeightedGraph g(4);
    g.add_edge(0, 1, 1);  // 0
    g.add_edge(0, 2, 1);  // 1
    g.add_edge(0, 3, 1);  // 2
    g.add_edge(1, 2, 1);  // 3
    g.add_edge(1, 3, 1);  // 4
    g.add_edge(2, 3, 1);  // 5
    g.set_rotation({{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}});
    CHECK_FALSE(is_planar_embedding(g));
    std::vector<double> x{0, 2, 1, 1}, y{0, 0, 2, 0.7};
    g.set_rotation(rotation_from_coordinates(g, x, y));
    CHECK(is_planar_embedding(g));
}

TEST_CASE("triangulation keeps edge ids and distances") {
    auto g = testing::rect_grid(4, 3);
    auto t = triangulate(g, {false});
    CHECK(is_planar_embedding(t));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        CHECK(t.edge(e).u == g.edge(e).u);
        CHECK(t.edge(e).v == g.edge(e).v);
        CHECK_FALSE(t.edge(e).structural);
    }
    for (EdgeId e = static_cast<EdgeId>(g.edge_count()); e < t.edge_count(); ++e) {
        CHECK(t.edge(e).structural);
    }
    for (const auto& f : trace_faces(t).faces) {
        CHECK(f.size() == 3);
    }
    CHECK(dijkstra_distances(t, 0) == dijkstra_distances(g, 0));

    auto kept = triangulate(g);
    auto fs = trace_faces(kept);
    CHECK(fs.faces[fs.outer_face()].size() == 10);
}

TEST_CASE("annulus contraction") {
    auto g = testing::rect_grid(5, 5);
    auto d = dijkstra_distances(g, 0);
    // inner 2 collapses {0, 1, 5}; outer 4 exclusive keeps d in [2, 4).
    auto cg = contract_annulus(g, 0, d, {2, 4, false, RootEdgeWeight::root_distance});
    CHECK(cg.graph.vertex_count() == 1 + 3 + 4);
    CHECK(cg.to_source[0] == 0);
    CHECK(cg.from_source[1] == 0);
    CHECK(cg.from_source[24] == kNoVertex);
    CHECK(is_planar_embedding(cg.graph));
    auto dc = dijkstra_distances(cg.graph, 0);
    for (VertexId v = 1; v < cg.graph.vertex_count(); ++v) {
        CHECK(dc[v] == doctest::Approx(d[cg.to_source[v]]));
    }

    auto unit = contract_annulus(g, 0, d, {2, 4, true, RootEdgeWeight::unit});
    CHECK(unit.graph.vertex_count() == 1 + 3 + 4 + 5);
    CHECK(dijkstra_distances(unit.graph, 0)[unit.from_source[2]] == 1);
}
