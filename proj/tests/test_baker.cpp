#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lowtw/baker.hpp"
#include "lowtw/error.hpp"
#include "lowtw/instances.hpp"
#include "support.hpp"

using namespace lowtw;

TEST_CASE("eps snapping") {
    CHECK(snap_baker_eps(0.5) == 0.5);
    CHECK(snap_baker_eps(0.3) == doctest::Approx(2.0 / 7));
    CHECK(snap_baker_eps(0.25) == 0.25);
    CHECK_THROWS_AS(snap_baker_eps(0.6), Error);
    CHECK_THROWS_AS(snap_baker_eps(0), Error);
}

TEST_CASE("layers of a 4x4 grid") {
    auto fam = build_layers(grid(4), 0, 0.5, 0);
    REQUIRE(fam.layers.size() == 3);
    CHECK(fam.layers[0].j == -1);
    CHECK(fam.layers[0].members.empty());
    CHECK(fam.layers[1].members.size() == 13);
    CHECK(fam.layers[1].core.size() == 9);
    CHECK(fam.layers[1].diameter == 6);
    CHECK(fam.layers[2].members.size() == 6);
    CHECK(fam.layers[2].core.size() == 3);
    CHECK(fam.layers[2].diameter == 3);
    for (const auto& l : fam.layers) {
        for (VertexId v : l.core) {
            CHECK(std::binary_search(l.members.begin(), l.members.end(), v));
        }
    }
}

TEST_CASE("every vertex survives enough shifts") {
    for (auto g : {grid(6), grid(5, WeightMode::random, 1)}) {
        for (double eps : {0.5, 0.25}) {
            auto counts = shift_membership_counts(g, 0, eps);
            CHECK(*std::min_element(counts.begin(), counts.end()) >= 2 / eps - 2);
        }
    }
}

TEST_CASE("brute force on a path") {
    WeightedGraph p(5);
    for (VertexId v = 1; v < 5; ++v) {
        p.add_edge(v - 1, v, 1);
    }
    std::vector<double> mu(5, 1.0);
    auto all = testing::all_vertices(5);
    auto is = brute_force_rho_is(p, 2, mu, all);
    CHECK(is.vertices == std::vector<VertexId>{0, 2, 4});
    CHECK(is.value == 3);
    mu[1] = 5;
    is = brute_force_rho_is(p, 2, mu, all);
    CHECK(is.vertices == std::vector<VertexId>{1, 3});
    CHECK(is.value == 6);
    auto many = testing::all_vertices(30);
    CHECK_THROWS_AS(brute_force_rho_is(testing::rect_grid(6, 5), 2, std::vector<double>(30, 1), many), Error);
}

TEST_CASE("bicriteria independent set") {
    auto g = testing::rect_grid(5, 4);
    DistanceMatrix dm(g);
    for (double rho : {1.5, 2.0, 3.0}) {
        auto mu = testing::random_measure(g.vertex_count(), 7);
        auto opt = brute_force_rho_is(g, rho, mu, testing::all_vertices(g.vertex_count()));
        auto res = bicriteria_is(g, 0, rho, 0.5, mu);
        CHECK(res.eps == 0.5);
        CHECK(res.value >= 0.5 * opt.value - 1e-9);
        double sum = 0;
        for (VertexId u : res.vertices) {
            sum += mu[u];
            for (VertexId v : res.vertices) {
                if (u != v) {
                    CHECK(dm(u, v) >= 0.5 * rho - 1e-9);
                }
            }
        }
        CHECK(sum == doctest::Approx(res.value));
        CHECK(res.shifts.size() == 4);
    }
}
