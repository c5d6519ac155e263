#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowtw/calibration.hpp"
#include "lowtw/error.hpp"
#include "lowtw/instances.hpp"
#include "lowtw/portal_embedding.hpp"
#include "support.hpp"

using namespace lowtw;

TEST_CASE("delta portals on a path") {
    WeightedGraph g(11);
    for (VertexId v = 1; v <= 10; ++v) {
        g.add_edge(v - 1, v, 1);
    }
    auto t = RootedTree::from_tree_graph(g, 0);
    auto ps = compute_delta_portals(t, 3);
    CHECK(ps.portals == std::vector<VertexId>{0, 4, 8});
    CHECK(path_portals(ps, 10) == std::vector<VertexId>{0, 4, 8});
    CHECK(path_portals(ps, 4) == std::vector<VertexId>{0, 4});
    CHECK(ps.portal_parent[7] == 4);
    CHECK_THROWS_AS(compute_delta_portals(t, 0), Error);
}

TEST_CASE("identity embedding is exact") {
    auto g = grid(5);
    auto e = identity_embedding(g);
    auto rep = measure_distortion(g, e);
    CHECK(rep.exhaustive);
    CHECK(rep.max_gap == 0);
    CHECK(rep.min_gap == 0);
    CHECK(rep.dominating);
    CHECK(rep.max_ratio == 1);
}

TEST_CASE("host graph dominates with bounded gap and width") {
    for (double eps : {0.5, 0.2}) {
        auto g = grid(10, WeightMode::random, 3);
        DistanceMatrix dm(g);
        auto phi = build_rspd(g, 0);
        auto pe = build_host_graph(g, phi, eps, dm);
        const auto& e = pe.embedding;
        CHECK(pe.diameter == doctest::Approx(diameter(g)));
        CHECK(e.source_count() == g.vertex_count());
        CHECK(host_edges_exact(dm, e));
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            REQUIRE_FALSE(e.copies[v].empty());
            for (VertexId c : e.copies[v]) {
                CHECK(e.source_of[c] == v);
            }
        }
        auto td = validate_tree_decomposition(e.host, e.host_decomposition);
        CHECK(td.valid());
        double ll = std::log2(std::log2(100.0));
        CHECK(td.width <= kEmbeddingWidthConstant / eps * ll * ll);
        auto rep = measure_distortion(dm, e);
        CHECK(rep.dominating);
        CHECK(rep.min_gap >= -1e-9);
        CHECK(rep.max_gap <= kEmbeddingGapConstant * eps * pe.diameter);
        CHECK(rep.max_copy_spread <= kBoundaryGapConstant * eps * pe.diameter);
        CHECK(pe.copy_node.size() == e.host.vertex_count());
    }
}

TEST_CASE("one-to-one collapse") {
    auto g = grid(6);
    auto pe = build_host_graph(g, build_rspd(g, 0), 0.5);
    auto oo = to_one_to_one(pe.embedding);
    REQUIRE(oo.map.size() == g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(oo.map[v] < oo.host.vertex_count());
        auto dh = dijkstra_distances(oo.host, oo.map[v]);
        auto dg = dijkstra_distances(g, v);
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            CHECK(dh[oo.map[u]] >= dg[u] - 1e-9);
        }
    }
}

TEST_CASE("sampled distortion mode") {
    auto g = grid(20);
    auto pe = build_host_graph(g, build_rspd(g, 0), 0.5);
    DistortionOptions opts;
    opts.exhaustive_limit = 100;
    opts.sampled_sources = 5;
    auto rep = measure_distortion(g, pe.embedding, opts);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.sources == 5);
    CHECK(rep.dominating);
}

TEST_CASE("eps outside (0,1)") {
    auto g = grid(4);
    auto phi = build_rspd(g, 0);
    CHECK_THROWS_AS(build_host_graph(g, phi, 0), Error);
    CHECK_THROWS_AS(build_host_graph(g, phi, 1), Error);
}
