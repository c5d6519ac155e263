#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowtw/error.hpp"
#include "lowtw/instances.hpp"
#include "lowtw/rspd.hpp"
#include "support.hpp"

using namespace lowtw;

TEST_CASE("rspd on grids is valid") {
    for (std::size_t side : {3, 8, 13}) {
        for (auto mode : {WeightMode::unit, WeightMode::random}) {
            auto g = grid(side, mode, side);
            auto phi = build_rspd(g, 0);
            auto rep = validate_rspd(g, phi);
            CHECK(rep.valid());
            CHECK(rep.max_boundary <= kDefaultEta);
            CHECK(phi.height() <= rspd_height_bound(g.vertex_count()));
            CHECK(phi.nodes[0].piece.size() == g.vertex_count());
            CHECK(phi.nodes[0].boundary.empty());
            auto sep = check_separation(g, phi, 100, 3);
            CHECK(sep.violations == 0);
        }
    }
}

TEST_CASE("height bound") {
    CHECK(rspd_height_bound(256) == doctest::Approx(4 * 8 + 8));
}

TEST_CASE("smallest eta and another root") {
    auto g = grid(9, WeightMode::random, 4);
    auto phi = build_rspd(g, 40, kMinEta);
    CHECK(phi.root_vertex == 40);
    CHECK(phi.eta == kMinEta);
    auto rep = validate_rspd(g, phi);
    CHECK(rep.valid());
    CHECK(rep.max_boundary <= kMinEta);
}

TEST_CASE("boundary paths follow the shortest path tree") {
    auto g = grid(6);
    auto phi = build_rspd(g, 0);
    auto d = dijkstra_distances(g, 0);
    for (const auto& node : phi.nodes) {
        for (VertexId b : node.boundary) {
            CHECK(phi.on_path(b, 0));
            CHECK(phi.on_path(b, b));
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                if (phi.on_path(b, v)) {
                    CHECK(d[v] <= d[b]);
                }
            }
        }
    }
}

TEST_CASE("home leaves and tree paths") {
    auto g = grid(7);
    auto phi = build_rspd(g, 0);
    auto homes = home_leaves(phi);
    REQUIRE(homes.size() == g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(phi.nodes[homes[v]].is_leaf());
        CHECK(home_leaf(phi, v) == homes[v]);
    }
    auto path = rspd_path_nodes(phi, homes[0], homes[48]);
    CHECK(path.front() == homes[0]);
    CHECK(path.back() == homes[48]);
    for (std::size_t i = 1; i < path.size(); ++i) {
        bool linked = phi.nodes[path[i]].parent == path[i - 1] || phi.nodes[path[i - 1]].parent == path[i];
        CHECK(linked);
    }
}

TEST_CASE("rejected inputs") {
    auto g = grid(4);
    CHECK_THROWS_AS(build_rspd(g, 0, 2), Error);
    WeightedGraph bare(3);
    bare.add_edge(0, 1, 1);
    bare.add_edge(1, 2, 1);
    try {
        build_rspd(bare, 0);
        FAIL("expected an embedding error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::embedding);
    }
}
