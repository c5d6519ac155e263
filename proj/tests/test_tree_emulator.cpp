#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lowtw/tree_emulator.hpp"
#include "support.hpp"

using namespace lowtw;

namespace {

// 0 - 1 - 2 - 3 - 4 - 5 - 6 (unit weights), rooted at 0.
RootedTree path7() { return RootedTree::from_tree_graph(testing::path_tree(7), 0); }

}  // namespace

TEST_CASE("hop bound formula") {
    CHECK(emulator_hop_bound(4) == 2);
    // log2 log2 16 = 2, 2 * 2 / log2(1.5) = 6.84
    CHECK(emulator_hop_bound(16) == 8);
    CHECK(emulator_hop_bound(256) == 12);
    CHECK(division_parameter(50) == 9);
    CHECK(division_parameter(1) == 1);
}

TEST_CASE("lca oracle") {
    WeightedGraph g(6);
    g.add_edge(0, 1, 1);
    g.add_edge(0, 2, 2);
    g.add_edge(1, 3, 3);
    g.add_edge(1, 4, 4);
    g.add_edge(2, 5, 5);
    auto t = RootedTree::from_tree_graph(g, 0);
    TreeDistanceOracle o(t);
    CHECK(o.lca(3, 4) == 1);
    CHECK(o.lca(3, 5) == 0);
    CHECK(o.lca(1, 4) == 1);
    CHECK(o.distance(3, 5) == 11);
    CHECK(o.distance(4, 4) == 0);
    CHECK(o.is_ancestor(1, 4));
    CHECK_FALSE(o.is_ancestor(2, 4));
    CHECK(tree_distance(t, 3, 4) == 7);
}

TEST_CASE("lca closure") {
    WeightedGraph g(6);
    g.add_edge(0, 1, 1);
    g.add_edge(0, 2, 1);
    g.add_edge(1, 3, 1);
    g.add_edge(1, 4, 1);
    g.add_edge(2, 5, 1);
    auto t = RootedTree::from_tree_graph(g, 0);
    std::vector<VertexId> a{3, 4, 5};
    CHECK(lca_closure(t, a) == std::vector<VertexId>{0, 1, 3, 4, 5});
    std::vector<VertexId> b{3};
    CHECK(lca_closure(t, b) == std::vector<VertexId>{3});
}

TEST_CASE("chop a path") {
    auto t = path7();
    // Bottom-up: cut when the residual subtree reaches ell + 1 = 3 vertices.
    CHECK(chop_to_pieces(t, 2) == std::vector<VertexId>{1, 4});
}

TEST_CASE("tree division of a path") {
    auto t = path7();
    auto div = tree_division(t, 2);
    CHECK_FALSE(div.separator.empty());
    CHECK(div.separator.size() <= 2.0 * 7 / 3 - 1);
    std::size_t covered = div.separator.size();
    for (std::size_t c = 0; c < div.components.size(); ++c) {
        CHECK(div.components[c].size() <= 2);
        CHECK(div.outgoing[c].size() <= 2);
        covered += div.components[c].size();
    }
    CHECK(covered == 7);
    auto whole = tree_division(t, 7);
    CHECK(whole.separator.empty());
    CHECK(whole.components.size() == 1);
}

TEST_CASE("emulator on random trees") {
    for (std::size_t n : {2, 5, 30, 200}) {
        auto rng = stream_rng(7, n);
        auto g = testing::random_tree(n, rng);
        auto emu = build_emulator(RootedTree::from_tree_graph(g, 0));
        CHECK(emu.hop_bound == emulator_hop_bound(n));
        auto td = validate_tree_decomposition(emu.graph, emu.decomposition);
        CHECK(td.valid());
        CHECK(td.width <= emu.hop_bound);
        for (VertexId s = 0; s < n; s += 7) {
            auto exact = dijkstra_distances(g, s);
            auto hop = hop_bounded_distances(emu.graph, s, emu.hop_bound);
            for (VertexId v = 0; v < n; ++v) {
                CHECK(hop[v] == doctest::Approx(exact[v]));
            }
        }
    }
}

TEST_CASE("emulator keeps the tree edges") {
    auto g = testing::star_tree(12);
    auto emu = build_emulator(RootedTree::from_tree_graph(g, 3));
    for (const auto& e : g.edges()) {
        CHECK(hop_bounded_distance(emu.graph, e.u, e.v, 1) == e.w);
    }
}
