#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "lowtw/error.hpp"
#include "lowtw/harness.hpp"
#include "lowtw/instances.hpp"
#include "lowtw/io.hpp"

using namespace lowtw;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "lowtw_harness_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("generators by name") {
    json meta;
    auto g = generate_family("grid", {{"side", 5}, {"weights", "random"}}, 3, &meta);
    CHECK(g.vertex_count() == 25);
    CHECK(meta.is_object());
    CHECK(generate_family("geodesic", {{"n", 2}}).edge_count() == 48);
    CHECK(generate_family("fractal", {{"n", 2}, {"k", 2}}).edge_count() == 2304);
    CHECK(generate_family("lbinstance", {{"eps", 1.0 / 42}, {"n", 100}}).vertex_count() == 100);
    CHECK(generate_family("subdiv", {{"k", 2}, {"side", 3}}).edge_count() == 24);
    CHECK_THROWS_AS(generate_family("torus", json::object()), Error);
}

TEST_CASE("gen then embed then verify") {
    auto dir = scratch_dir();
    auto gr = (dir / "g.gr").string();
    auto gen = run_experiment({{"command", "gen"}, {"family", "grid"}, {"params", {{"side", 6}}}, {"out", gr}});
    CHECK(gen["pass"] == true);
    CHECK(gen["schema_version"] == kReportSchemaVersion);
    CHECK(fs::exists(gr));
    CHECK(fs::exists(gr + ".json"));

    auto host = (dir / "h.gr").string(), td = (dir / "h.td").string(), map = (dir / "h.map").string();
    auto emb = run_experiment({{"command", "embed"},
                               {"in", gr},
                               {"root", 1},
                               {"eps", 0.5},
                               {"out", host},
                               {"td", td},
                               {"map", map}});
    CHECK(emb["pass"] == true);
    CHECK(emb["checks"]["dominating"] == true);
    CHECK(emb["checks"]["decomposition"] == true);
    CHECK(emb.contains("timing"));

    auto ver = run_experiment(
        {{"command", "verify"}, {"in", gr}, {"host", host}, {"map", map}, {"td", td}, {"eps", 0.5}});
    CHECK(ver["pass"] == true);

    auto tdv = run_experiment({{"command", "verify"}, {"in", host}, {"td", td}});
    CHECK(tdv["pass"] == true);
}

TEST_CASE("emulator, rspd, stochastic and baker pipelines") {
    auto dir = scratch_dir();
    auto tree = (dir / "tree.gr").string();
    WeightedGraph t(6);
    for (VertexId v = 1; v < 6; ++v) {
        t.add_edge(v / 2, v, v);
    }
    write_graph_file(tree, t);
    CHECK(run_experiment({{"command", "emulator"}, {"in", tree}})["pass"] == true);

    auto gr = (dir / "g5.gr").string();
    write_graph_file(gr, grid(5));
    CHECK(run_experiment({{"command", "rspd"}, {"in", gr}, {"pairs", 50}})["pass"] == true);
    auto st = run_experiment({{"command", "stochastic"}, {"in", gr}, {"eps", 0.25}, {"trials", 20}});
    CHECK(st["checks"]["ramsey"] == true);
    auto bk = run_experiment({{"command", "baker-is"}, {"in", gr}, {"rho", 2.0}, {"eps", 0.5}});
    CHECK(bk["pass"] == true);
    CHECK(bk["checks"].contains("approximation"));
}

TEST_CASE("bad configs") {
    CHECK_THROWS_AS(run_experiment({{"command", "frobnicate"}}), Error);
    try {
        run_experiment({{"command", "embed"}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::argument);
    }
}

TEST_CASE("csv flattening") {
    json report = {{"pass", true}, {"result", {{"width", 3}, {"gap", 0.5}}}};
    auto csv = report_to_csv(report);
    CHECK(csv.find("key,value") == 0);
    CHECK(csv.find("result.width,3") != std::string::npos);
    CHECK(csv.find("pass,true") != std::string::npos);
}

TEST_CASE("edge and multiplicative distortion") {
    auto g = grid(4);
    auto e = identity_embedding(g);
    CHECK(average_edge_distortion(g, e) == doctest::Approx(1));
    auto rep = multiplicative_report(g, e);
    CHECK(rep.max_ratio == doctest::Approx(1));
    CHECK(rep.max_additive_gap == 0);
}
