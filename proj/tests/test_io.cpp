#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lowtw/error.hpp"
#include "lowtw/instances.hpp"
#include "lowtw/io.hpp"
#include "lowtw/planar.hpp"
#include "lowtw/portal_embedding.hpp"

using namespace lowtw;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::argument;
}

}  // namespace

TEST_CASE("graph round trip with rotation and structural edges") {
    auto g = triangulate(grid(4, WeightMode::random, 5));
    std::stringstream ss;
    write_graph(ss, g);
    auto h = read_graph(ss);
    REQUIRE(h.vertex_count() == g.vertex_count());
    REQUIRE(h.edge_count() == g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        CHECK(h.edge(e).u == g.edge(e).u);
        CHECK(h.edge(e).v == g.edge(e).v);
        CHECK(h.edge(e).w == g.edge(e).w);
        CHECK(h.edge(e).structural == g.edge(e).structural);
    }
    CHECK(h.rotation() == g.rotation());
}

TEST_CASE("graph text format") {
    std::stringstream in("c a comment\np tw 3 2\n1 2\n2 3 2.5\n");
    auto g = read_graph(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge(0).w == 1);
    CHECK(g.edge(1).u == 1);
    CHECK(g.edge(1).w == 2.5);
    CHECK_FALSE(g.has_rotation());

    std::stringstream out;
    write_graph(out, g);
    CHECK(out.str().rfind("p tw 3 2\n", 0) == 0);
}

TEST_CASE("malformed graphs are io errors") {
    std::stringstream no_header("1 2\n");
    CHECK(kind_of([&] { read_graph(no_header); }) == ErrorKind::io);
    std::stringstream short_edges("p tw 3 2\n1 2\n");
    CHECK(kind_of([&] { read_graph(short_edges); }) == ErrorKind::io);
    std::stringstream out_of_range("p tw 2 1\n1 5\n");
    CHECK(kind_of([&] { read_graph(out_of_range); }) == ErrorKind::io);
    CHECK(kind_of([] { read_graph_file("/nonexistent/file.gr"); }) == ErrorKind::io);
}

TEST_CASE("tree decomposition round trip") {
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2, 3}, {3, 4}};
    td.tree_edges = {{0, 1}, {1, 2}};
    std::stringstream ss;
    write_tree_decomposition(ss, td, 5);
    CHECK(ss.str().rfind("s td 3 3 5\n", 0) == 0);
    std::size_t n = 0;
    auto back = read_tree_decomposition(ss, &n);
    CHECK(n == 5);
    CHECK(back.bags == td.bags);
    CHECK(back.tree_edges == td.tree_edges);
}

TEST_CASE("host map round trip") {
    auto g = grid(5);
    auto pe = build_host_graph(g, build_rspd(g, 0), 0.5);
    std::stringstream ss;
    write_host_map(ss, pe.embedding, pe.copy_node);
    auto back = read_host_map(ss, pe.embedding.host, g.vertex_count());
    CHECK(back.copies == pe.embedding.copies);
    CHECK(back.source_of == pe.embedding.source_of);
}

TEST_CASE("measures") {
    std::stringstream plain("0.5\n1\n2\n");
    CHECK(read_measure(plain, 3) == std::vector<double>{0.5, 1, 2});
    std::stringstream rows("vertex,value\n3,2\n1,0.25\n2,1\n");
    CHECK(read_measure(rows, 3) == std::vector<double>{0.25, 1, 2});
    std::stringstream short_list("1\n2\n");
    CHECK(kind_of([&] { read_measure(short_list, 3); }) == ErrorKind::io);
    std::stringstream negative("1\n-2\n");
    CHECK(kind_of([&] { read_measure(negative, 2); }) == ErrorKind::io);
}
