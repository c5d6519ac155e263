#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowtw/error.hpp"
#include "lowtw/instances.hpp"
#include "lowtw/rooted_stochastic.hpp"

using namespace lowtw;

TEST_CASE("band thresholds") {
    auto g = grid(12);
    auto s = slice_bands(g, 0, 0.25, 0.5);
    CHECK(s.scale == 1);
    // (1/eps)^((i + x)/eps) = 4^(4i + 2)
    CHECK(s.upper_scaled(0) == doctest::Approx(16));
    CHECK(s.upper_scaled(1) == doctest::Approx(4096));
    CHECK(s.lower(0) == doctest::Approx(1.0 / 16));
    CHECK(s.lower(1) == doctest::Approx(16));
    REQUIRE(s.bands.size() == 2);
    CHECK(s.bands[0].size() == 115);
    CHECK(s.bands[1].size() == 28);
    CHECK(s.band_of[0] == -1);
    CHECK(s.band_of[11] == 0);
    CHECK(s.band_of[143] == 1);
}

TEST_CASE("successful vertices sit deep inside their band") {
    auto g = grid(12);
    auto s = slice_bands(g, 0, 0.25, 0.5);
    CHECK(is_successful(s, 0));
    CHECK(is_successful(s, 1));         // d = 1 in [1/4, 4]
    CHECK(is_successful(s, 3 * 12 + 1));  // d = 4
    CHECK_FALSE(is_successful(s, 5));   // d = 5
    CHECK_FALSE(is_successful(s, 143)); // band 1 needs d >= 64
}

TEST_CASE("thresholds follow the graph's units") {
    auto g = grid(6, WeightMode::random, 9);
    auto s = slice_bands(g, 0, 0.25, 0.3);
    double mn = kInfinity;
    for (VertexId v = 1; v < g.vertex_count(); ++v) {
        mn = std::min(mn, s.root_distance[v]);
    }
    CHECK(s.scale == doctest::Approx(mn));
    CHECK(s.upper(0) == doctest::Approx(mn * s.upper_scaled(0)));
    for (VertexId v = 1; v < g.vertex_count(); ++v) {
        int i = s.band_of[v];
        CHECK(s.root_distance[v] >= s.lower(i) - 1e-9);
        CHECK(s.root_distance[v] < s.upper(i));
    }
}

TEST_CASE("band graph contracts the inner disk") {
    auto g = grid(12);
    auto s = slice_bands(g, 0, 0.25, 0.5);
    auto b1 = band_graph(g, s, 1);
    CHECK(b1.graph.vertex_count() == 1 + 28);
    CHECK(b1.from_source[5] == 0);
    auto d = dijkstra_distances(b1.graph, 0);
    for (VertexId v = 1; v < b1.graph.vertex_count(); ++v) {
        CHECK(d[v] == doctest::Approx(s.root_distance[b1.to_source[v]]));
    }
}

TEST_CASE("sampling is reproducible") {
    auto g = grid(8);
    auto a = sample_bands(g, 0, 0.25, 5, 3);
    auto b = sample_bands(g, 0, 0.25, 5, 3);
    auto c = sample_bands(g, 0, 0.25, 5, 4);
    CHECK(a.x == b.x);
    CHECK(a.x != c.x);
    CHECK(a.x >= 0);
    CHECK(a.x < 1);
}

TEST_CASE("one trial embedding") {
    auto g = grid(8, WeightMode::random, 2);
    auto re = build_rooted_embedding(g, 27, 0.25, 11, 0);
    const auto& e = re.embedding;
    CHECK(re.band_eps == doctest::Approx(std::pow(0.25, 4)));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(e.canonical(v) == v);
    }
    CHECK(validate_tree_decomposition(e.host, e.host_decomposition).valid());
    auto rep = measure_distortion(g, e);
    CHECK(rep.dominating);
    auto dr = dijkstra_distances(g, 27);
    for (VertexId u = 0; u < g.vertex_count(); u += 5) {
        auto dh = dijkstra_distances(e.host, u);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            CHECK(dh[v] <= dr[u] + dr[v] + 1e-9);
        }
    }
}

TEST_CASE("monte carlo statistics") {
    auto g = grid(8);
    auto st = rooted_distortion_stats(g, 0, 0.25, 50, 1);
    CHECK(st.trials == 50);
    CHECK(st.vertices == 64);
    CHECK(st.ramsey_violations == 0);
    CHECK(st.dominance_violations == 0);
    CHECK(st.diameter_violations == 0);
    CHECK(st.contained_violations == 0);
    CHECK(st.max_unsuccessful_rate <= 1);
    CHECK(st.successful_checks > 0);
}

TEST_CASE("parameter domain") {
    auto g = grid(4);
    CHECK_THROWS_AS(slice_bands(g, 0, 1.0, 0.5), Error);
    CHECK_THROWS_AS(slice_bands(g, 0, 0.25, 1.0), Error);
    CHECK_THROWS_AS(build_rooted_embedding(g, 0, 0.3, 1), Error);
    CHECK_NOTHROW(build_rooted_embedding(g, 0, kMaxRootedEps, 1));
}
