#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "lowtw/lowtw.h"

TEST_CASE("version and status names") {
    CHECK(std::string(lowtw_version()) == "0.1.0");
    CHECK(std::string(lowtw_status_name(LOWTW_E_RESOURCE)) == "resource");
}

TEST_CASE("build a graph by hand") {
    lowtw_graph* g = nullptr;
    REQUIRE(lowtw_graph_create(4, &g) == LOWTW_OK);
    // 4-cycle 0-1-2-3 with unit weights.
    for (size_t v = 0; v < 4; ++v) {
        REQUIRE(lowtw_graph_add_edge(g, v, (v + 1) % 4, 1.0) == LOWTW_OK);
    }
    CHECK(lowtw_graph_vertex_count(g) == 4);
    CHECK(lowtw_graph_edge_count(g) == 4);
    CHECK(lowtw_graph_is_planar(g) == 0);
    size_t rot[4][2] = {{3, 0}, {0, 1}, {1, 2}, {2, 3}};
    for (size_t v = 0; v < 4; ++v) {
        REQUIRE(lowtw_graph_set_rotation(g, v, rot[v], 2) == LOWTW_OK);
    }
    CHECK(lowtw_graph_is_planar(g) == 1);
    double d = 0;
    REQUIRE(lowtw_graph_distance(g, 0, 2, &d) == LOWTW_OK);
    CHECK(d == 2);
    REQUIRE(lowtw_graph_diameter(g, &d) == LOWTW_OK);
    CHECK(d == 2);

    CHECK(lowtw_graph_add_edge(g, 0, 9, 1.0) == LOWTW_E_ARGUMENT);
    CHECK(std::string(lowtw_last_error()).find("out of range") != std::string::npos);
    CHECK(lowtw_graph_add_edge(g, 1, 1, 1.0) == LOWTW_E_ARGUMENT);
    CHECK(lowtw_graph_add_edge(g, 0, 1, -1.0) == LOWTW_E_ARGUMENT);
    lowtw_graph_free(g);
}

TEST_CASE("embed a generated grid") {
    lowtw_graph* g = nullptr;
    REQUIRE(lowtw_graph_generate("grid", "{\"side\": 6}", &g) == LOWTW_OK);
    CHECK(lowtw_graph_vertex_count(g) == 36);
    CHECK(lowtw_graph_is_planar(g) == 1);

    lowtw_embedding* e = nullptr;
    REQUIRE(lowtw_embed(g, 0, 0.5, 4, &e) == LOWTW_OK);
    CHECK(lowtw_embedding_host_vertex_count(e) >= 36);
    CHECK(lowtw_embedding_host_edge_count(e) > 0);
    CHECK(lowtw_embedding_width(e) > 0);
    size_t c = 0;
    REQUIRE(lowtw_embedding_copy_count(e, 5, &c) == LOWTW_OK);
    CHECK(c >= 1);
    double dh = 0, dg = 0;
    REQUIRE(lowtw_embedding_distance(e, 0, 35, &dh) == LOWTW_OK);
    REQUIRE(lowtw_graph_distance(g, 0, 35, &dg) == LOWTW_OK);
    CHECK(dh >= dg);

    char* report = nullptr;
    REQUIRE(lowtw_embedding_report(e, g, &report) == LOWTW_OK);
    CHECK(std::string(report).find("\"dominating\":true") != std::string::npos);
    CHECK(std::string(report).find("\"decomposition_valid\":true") != std::string::npos);
    lowtw_string_free(report);
    lowtw_embedding_free(e);

    REQUIRE(lowtw_rooted_embed(g, 0, 0.25, 7, 0, &e) == LOWTW_OK);
    REQUIRE(lowtw_embedding_canonical(e, 3, &c) == LOWTW_OK);
    CHECK(c == 3);
    lowtw_embedding_free(e);
    CHECK(lowtw_rooted_embed(g, 0, 0.4, 7, 0, &e) == LOWTW_E_ARGUMENT);
    CHECK(lowtw_embed(g, 99, 0.5, 4, &e) == LOWTW_E_ARGUMENT);
    lowtw_graph_free(g);
}

TEST_CASE("file round trip and pipelines") {
    std::string path = std::string(P_tmpdir) + "/lowtw_capi_test.gr";
    lowtw_graph* g = nullptr;
    REQUIRE(lowtw_graph_generate("geodesic", "{\"n\": 2}", &g) == LOWTW_OK);
    REQUIRE(lowtw_graph_write(g, path.c_str()) == LOWTW_OK);
    lowtw_graph* h = nullptr;
    REQUIRE(lowtw_graph_read(path.c_str(), &h) == LOWTW_OK);
    CHECK(lowtw_graph_edge_count(h) == 48);
    CHECK(lowtw_graph_is_planar(h) == 1);
    lowtw_graph_free(g);
    lowtw_graph_free(h);
    CHECK(lowtw_graph_read("/nonexistent/x.gr", &h) == LOWTW_E_IO);

    std::string cfg = "{\"command\": \"rspd\", \"in\": \"" + path + "\", \"pairs\": 20}";
    char* report = nullptr;
    REQUIRE(lowtw_run(cfg.c_str(), &report) == LOWTW_OK);
    CHECK(std::string(report).find("\"pass\": true") != std::string::npos);
    char* csv = nullptr;
    REQUIRE(lowtw_report_csv(report, &csv) == LOWTW_OK);
    CHECK(std::string(csv).rfind("key,value\n", 0) == 0);
    lowtw_string_free(csv);
    lowtw_string_free(report);

    CHECK(lowtw_run("{\"command\": \"nope\"}", &report) == LOWTW_E_ARGUMENT);
    CHECK(lowtw_run("not json", &report) == LOWTW_E_ARGUMENT);
    CHECK(lowtw_run(nullptr, &report) == LOWTW_E_ARGUMENT);
}

TEST_CASE("partial rotations are rejected") {
    lowtw_graph* g = nullptr;
    REQUIRE(lowtw_graph_create(3, &g) == LOWTW_OK);
    lowtw_graph_add_edge(g, 0, 1, 1);
    lowtw_graph_add_edge(g, 1, 2, 1);
    size_t e0 = 0;
    REQUIRE(lowtw_graph_set_rotation(g, 0, &e0, 1) == LOWTW_OK);
    lowtw_embedding* e = nullptr;
    CHECK(lowtw_embed(g, 0, 0.5, 4, &e) == LOWTW_E_EMBEDDING);
    lowtw_graph_free(g);
}
