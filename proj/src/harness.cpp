#include "lowtw/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lowtw/baker.hpp"
#include "lowtw/calibration.hpp"
#include "lowtw/error.hpp"
#include "lowtw/instances.hpp"
#include "lowtw/io.hpp"
#include "lowtw/planar.hpp"
#include "lowtw/random.hpp"
#include "lowtw/rooted_stochastic.hpp"
#include "lowtw/rspd.hpp"
#include "lowtw/tree_emulator.hpp"

namespace lowtw {

using nlohmann::json;

MultiplicativeReport multiplicative_report(const WeightedGraph& g, const OneToManyEmbedding& e,
                                           const DistortionOptions& opts) {
    auto d = measure_distortion(g, e, opts);
    MultiplicativeReport rep;
    rep.pairs = d.pairs;
    rep.max_ratio = d.max_ratio;
    rep.mean_ratio = d.mean_ratio;
    rep.max_additive_gap = d.max_canonical_gap;
    rep.dominating = d.dominating;
    return rep;
}

double average_edge_distortion(const WeightedGraph& g, const OneToManyEmbedding& e) {
    require(e.source_count() == g.vertex_count(), ErrorKind::argument, "embedding does not match the graph");
    std::vector<std::vector<std::pair<VertexId, Length>>> by_source(g.vertex_count());
    for (const auto& ed : g.edges()) {
        if (!ed.structural && ed.w > 0) {
            by_source[ed.u].emplace_back(ed.v, ed.w);
        }
    }
    double sum = 0;
    std::size_t count = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (by_source[u].empty()) {
            continue;
        }
        auto d = dijkstra_distances(e.host, e.canonical(u));
        for (auto [v, w] : by_source[u]) {
            sum += d[e.canonical(v)] / w;
            ++count;
        }
    }
    return count ? sum / static_cast<double>(count) : 1.0;
}

namespace {

std::string require_path(const json& cfg, const char* key) {
    if (!cfg.contains(key) || !cfg[key].is_string() || cfg[key].get<std::string>().empty()) {
        fail(ErrorKind::argument, std::string("missing option \"") + key + "\"");
    }
    return cfg[key].get<std::string>();
}

std::string optional_path(const json& cfg, const char* key) {
    return cfg.contains(key) && cfg[key].is_string() ? cfg[key].get<std::string>() : std::string();
}

VertexId root_of(const json& cfg, const WeightedGraph& g) {
    long long r = cfg.value("root", 1LL);
    if (r < 1 || static_cast<std::size_t>(r) > g.vertex_count()) {
        fail(ErrorKind::argument, "root must be a 1-indexed vertex of the input");
    }
    return static_cast<VertexId>(r - 1);
}

DistortionOptions distortion_options(const json& cfg) {
    DistortionOptions opts;
    opts.exhaustive_limit = cfg.value("exhaustive_limit", opts.exhaustive_limit);
    opts.sampled_sources = cfg.value("sources", opts.sampled_sources);
    opts.sampled_extra_copies = cfg.value("extra_copies", opts.sampled_extra_copies);
    opts.seed = cfg.value("seed", opts.seed);
    return opts;
}

double loglog(std::size_t n) {
    double v = std::log2(std::log2(static_cast<double>(std::max<std::size_t>(n, 4))));
    return std::max(1.0, v);
}

json decomposition_json(const TreeDecompositionReport& r) {
    return {{"valid", r.valid()},
            {"tree_structure", r.tree_structure},
            {"vertex_coverage", r.vertex_coverage},
            {"edge_coverage", r.edge_coverage},
            {"connected_subtrees", r.connected_subtrees},
            {"width", r.width}};
}

json distortion_json(const DistortionReport& d) {
    return {{"pairs", d.pairs},
            {"sources", d.sources},
            {"exhaustive", d.exhaustive},
            {"min_gap", d.min_gap},
            {"max_gap", d.max_gap},
            {"max_canonical_gap", d.max_canonical_gap},
            {"mean_canonical_gap", d.mean_canonical_gap},
            {"max_ratio", d.max_ratio},
            {"mean_ratio", d.mean_ratio},
            {"max_copy_spread", d.max_copy_spread},
            {"dominating", d.dominating}};
}

std::vector<std::size_t> one_indexed(const std::vector<VertexId>& vs) {
    std::vector<std::size_t> out;
    out.reserve(vs.size());
    for (VertexId v : vs) {
        out.push_back(std::size_t{v} + 1);
    }
    return out;
}

struct Outcome {
    json result;
    json checks = json::object();
};

}  // namespace

WeightedGraph generate_family(const std::string& family, const json& params, std::uint64_t seed, json* meta_out) {
    json meta = {{"family", family}, {"params", params}};
    WeightedGraph g;
    if (family == "grid") {
        std::size_t side = params.value("side", std::size_t{8});
        std::string w = params.value("weights", std::string("unit"));
        require(w == "unit" || w == "random", ErrorKind::argument, "weights must be unit or random");
        g = grid(side, w == "unit" ? WeightMode::unit : WeightMode::random, params.value("seed", seed));
    } else if (family == "subdiv") {
        std::size_t k = params.value("k", std::size_t{2});
        std::string base = optional_path(params, "in");
        g = subdivide(base.empty() ? grid(params.value("side", std::size_t{3})) : read_graph_file(base), k);
    } else if (family == "lbinstance") {
        double eps = params.value("eps", 1.0 / 42);
        auto lb = lower_bound_instance(eps, params.value("n", std::size_t{0}));
        meta["grid_side"] = lb.grid_side;
        meta["subdivision"] = lb.subdivision;
        meta["core_vertices"] = lb.core_vertices;
        meta["pendant_vertices"] = lb.pendant_vertices;
        g = std::move(lb.graph);
    } else if (family == "geodesic") {
        auto gg = geodesic_grid(params.value("n", std::size_t{2}));
        meta["s"] = gg.s + 1;
        meta["t"] = gg.t + 1;
        json paths = json::array();
        for (const auto& p : gg.paths) {
            std::vector<std::size_t> ids;
            for (EdgeId e : p) {
                ids.push_back(std::size_t{e} + 1);
            }
            paths.push_back(ids);
        }
        meta["paths"] = paths;
        meta["grid_vertex_map"] = one_indexed(gg.grid_vertex_map);
        g = std::move(gg.graph);
    } else if (family == "fractal") {
        auto fi = fractal(params.value("n", std::size_t{2}), params.value("k", std::size_t{1}));
        meta["s"] = fi.s + 1;
        meta["t"] = fi.t + 1;
        meta["level"] = fi.level;
        meta["base_edge_count"] = fi.base_edge_count;
        meta["path_count"] = fi.path_count;
        meta["path_hop_length"] = fi.path_hop_length;
        json copies = json::array();
        for (const auto& c : fi.copies) {
            copies.push_back({{"first_edge", c.first_edge + 1}, {"s", c.s + 1}, {"t", c.t + 1}});
        }
        meta["copies"] = copies;
        g = std::move(fi.graph);
    } else {
        fail(ErrorKind::argument, "unknown family \"" + family + "\"");
    }
    meta["vertices"] = g.vertex_count();
    meta["edges"] = g.edge_count();
    if (meta_out) {
        *meta_out = std::move(meta);
    }
    return g;
}

namespace {

Outcome run_gen(const json& cfg) {
    std::string family = cfg.value("family", std::string());
    json params = cfg.value("params", json::object());
    json meta;
    auto g = generate_family(family, params, cfg.value("seed", std::uint64_t{1}), &meta);
    Outcome o;
    std::string out = require_path(cfg, "out");
    write_graph_file(out, g);
    std::string sidecar = optional_path(cfg, "sidecar");
    if (sidecar.empty()) {
        sidecar = out + ".json";
    }
    std::ofstream(sidecar) << meta.dump(2) << '\n';
    bool planar = g.has_rotation() && is_planar_embedding(g);
    o.result = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"planar", planar},
                {"out", out}, {"sidecar", sidecar}};
    if (g.vertex_count() <= 2000 && g.is_connected()) {
        o.result["diameter"] = diameter(g);
    }
    o.checks["planar"] = planar;
    return o;
}

Outcome run_emulator(const json& cfg) {
    auto g = read_graph_file(require_path(cfg, "in"));
    VertexId r = root_of(cfg, g);
    auto t = RootedTree::from_tree_graph(g, r);
    auto emu = build_emulator(t);
    const std::size_t n = g.vertex_count();
    TreeDistanceOracle oracle(t);
    std::vector<VertexId> sources(n);
    std::iota(sources.begin(), sources.end(), 0);
    bool exhaustive = n <= cfg.value("exhaustive_limit", std::size_t{400});
    if (!exhaustive) {
        std::size_t want = std::max<std::size_t>(1, (cfg.value("pairs", std::size_t{10000}) + n - 1) / n);
        auto rng = stream_rng(cfg.value("seed", std::uint64_t{1}), 0);
        std::shuffle(sources.begin(), sources.end(), rng);
        sources.resize(std::min(want, n));
    }
    double max_error = 0;
    std::size_t pairs = 0;
    for (VertexId u : sources) {
        auto d = hop_bounded_distances(emu.graph, u, emu.hop_bound);
        for (VertexId v = 0; v < n; ++v) {
            max_error = std::max(max_error, std::abs(d[v] - oracle.distance(u, v)));
            ++pairs;
        }
    }
    auto td = validate_tree_decomposition(emu.graph, emu.decomposition);
    double size_bound = kEmulatorSizeConstant * static_cast<double>(n) * (1 + loglog(n));
    Outcome o;
    o.result = {{"n", n},
                {"hop_bound", emu.hop_bound},
                {"width", td.width},
                {"edges", emu.graph.edge_count()},
                {"size_bound", size_bound},
                {"pairs_checked", pairs},
                {"exhaustive", exhaustive},
                {"max_error", max_error},
                {"decomposition", decomposition_json(td)}};
    o.checks["exact"] = max_error <= kLengthTolerance;
    o.checks["decomposition"] = td.valid();
    o.checks["width"] = td.width <= emu.hop_bound;
    o.checks["size"] = static_cast<double>(emu.graph.edge_count()) <= size_bound;
    if (auto out = optional_path(cfg, "out"); !out.empty()) {
        write_graph_file(out, emu.graph);
    }
    if (auto p = optional_path(cfg, "td"); !p.empty()) {
        write_tree_decomposition_file(p, emu.decomposition, n);
    }
    return o;
}

Outcome run_rspd(const json& cfg) {
    auto g = read_graph_file(require_path(cfg, "in"));
    VertexId r = root_of(cfg, g);
    std::size_t eta = cfg.value("eta", kDefaultEta);
    auto phi = build_rspd(g, r, eta);
    auto rep = validate_rspd(g, phi);
    auto sep = check_separation(g, phi, cfg.value("pairs", std::size_t{200}), cfg.value("seed", std::uint64_t{1}));
    Outcome o;
    o.result = {{"n", g.vertex_count()},
                {"eta", eta},
                {"depth", rep.height},
                {"depth_bound", rspd_height_bound(g.vertex_count())},
                {"node_count", rep.node_count},
                {"leaf_count", phi.leaf_count()},
                {"max_boundary_paths", rep.max_boundary},
                {"max_leaf_internal", rep.max_leaf_internal},
                {"verdicts",
                 {{"p1", rep.p1},
                  {"p2a", rep.p2a},
                  {"p2b", rep.p2b},
                  {"p2c", rep.p2c},
                  {"p3", rep.p3},
                  {"shortest_boundaries", rep.shortest_boundaries}}},
                {"issues", rep.issues},
                {"separation",
                 {{"pairs", sep.pairs_checked}, {"node_checks", sep.node_checks}, {"violations", sep.violations}}}};
    o.checks["rspd"] = rep.valid();
    o.checks["separation"] = sep.violations == 0;
    return o;
}

Outcome run_embed(const json& cfg) {
    auto g = read_graph_file(require_path(cfg, "in"));
    VertexId r = root_of(cfg, g);
    double eps = cfg.value("eps", 0.25);
    std::size_t eta = cfg.value("eta", kDefaultEta);
    auto phi = build_rspd(g, r, eta);
    DistanceMatrix dg(g);
    auto pe = build_host_graph(g, phi, eps, dg);
    const auto& emb = pe.embedding;
    auto opts = distortion_options(cfg);
    auto dist = measure_distortion(dg, emb, opts);
    auto td = validate_tree_decomposition(emb.host, emb.host_decomposition);
    bool exact = host_edges_exact(dg, emb);
    const std::size_t n = g.vertex_count();
    double gap_bound = kEmbeddingGapConstant * eps * pe.diameter;
    double width_bound = kEmbeddingWidthConstant * loglog(n) * loglog(n) / eps;
    double spread_bound = kBoundaryGapConstant * eps * pe.diameter;
    Outcome o;
    o.result = {{"n", n},
                {"eps", eps},
                {"diameter", pe.diameter},
                {"delta", pe.delta},
                {"width", td.width},
                {"width_bound", width_bound},
                {"host_vertices", emb.host.vertex_count()},
                {"host_edges", emb.host.edge_count()},
                {"decomposition_nodes", pe.decomposition_nodes},
                {"max_node_portals", pe.max_node_portals},
                {"emulator_width", pe.emulator_width},
                {"gap_bound", gap_bound},
                {"copy_spread_bound", spread_bound},
                {"gap_constant", pe.diameter > 0 ? dist.max_gap / (eps * pe.diameter) : 0.0},
                {"distortion", distortion_json(dist)},
                {"average_edge_distortion", average_edge_distortion(g, emb)},
                {"decomposition", decomposition_json(td)},
                {"host_edges_exact", exact}};
    o.checks["dominating"] = dist.dominating && exact;
    o.checks["decomposition"] = td.valid();
    o.checks["gap"] = dist.max_gap <= gap_bound + kLengthTolerance;
    o.checks["width"] = static_cast<double>(td.width) <= width_bound;
    o.checks["copy_spread"] = dist.max_copy_spread <= spread_bound + kLengthTolerance;
    if (auto p = optional_path(cfg, "out"); !p.empty()) {
        write_graph_file(p, emb.host);
    }
    if (auto p = optional_path(cfg, "td"); !p.empty()) {
        write_tree_decomposition_file(p, emb.host_decomposition, emb.host.vertex_count());
    }
    if (auto p = optional_path(cfg, "map"); !p.empty()) {
        write_host_map_file(p, emb, pe.copy_node);
    }
    return o;
}

Outcome run_stochastic(const json& cfg) {
    auto g = read_graph_file(require_path(cfg, "in"));
    VertexId r = root_of(cfg, g);
    double eps = cfg.value("eps", 0.25);
    std::size_t trials = cfg.value("trials", std::size_t{200});
    std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
    RootedStatsOptions opts;
    opts.eta = cfg.value("eta", kDefaultEta);
    auto st = rooted_distortion_stats(g, r, eps, trials, seed, opts);
    Outcome o;
    o.result = {{"n", st.vertices},
                {"eps", eps},
                {"trials", st.trials},
                {"scale", st.scale},
                {"gap_constant", st.gap_constant},
                {"distinct_band_graphs", st.distinct_band_graphs},
                {"max_unsuccessful_rate", st.max_unsuccessful_rate},
                {"mean_unsuccessful_rate", st.mean_unsuccessful_rate},
                {"unsuccessful_bound", 2.5 * eps},
                {"max_mean_gap", st.max_mean_gap},
                {"max_normalized_mean_gap", st.max_normalized_mean_gap},
                {"successful_checks", st.successful_checks},
                {"ramsey_violations", st.ramsey_violations},
                {"worst_ramsey_excess", st.worst_ramsey_excess},
                {"contained_checks", st.contained_checks},
                {"contained_violations", st.contained_violations},
                {"dominance_violations", st.dominance_violations},
                {"diameter_violations", st.diameter_violations},
                {"max_width", st.max_width}};
    o.checks["unsuccessful_rate"] = st.max_unsuccessful_rate <= 2.5 * eps;
    o.checks["ramsey"] = st.ramsey_violations == 0;
    o.checks["contained"] = st.contained_violations == 0;
    o.checks["dominating"] = st.dominance_violations == 0;
    o.checks["band_diameter"] = st.diameter_violations == 0;
    o.checks["mean_gap"] = st.max_normalized_mean_gap <= st.gap_constant * eps;
    std::string out = optional_path(cfg, "out");
    std::string tdp = optional_path(cfg, "td");
    std::string mapp = optional_path(cfg, "map");
    if (!out.empty() || !tdp.empty() || !mapp.empty()) {
        auto re = build_rooted_embedding(g, r, eps, seed, 0, opts.eta);
        if (!out.empty()) {
            write_graph_file(out, re.embedding.host);
        }
        if (!tdp.empty()) {
            write_tree_decomposition_file(tdp, re.embedding.host_decomposition, re.embedding.host.vertex_count());
        }
        if (!mapp.empty()) {
            write_host_map_file(mapp, re.embedding, {});
        }
        o.result["sample_trial"] = {{"x", re.slicing.x},
                                    {"bands", re.bands.size()},
                                    {"host_vertices", re.embedding.host.vertex_count()},
                                    {"host_edges", re.embedding.host.edge_count()},
                                    {"width", re.embedding.host_decomposition.width()}};
    }
    return o;
}

Outcome run_baker(const json& cfg) {
    auto g = read_graph_file(require_path(cfg, "in"));
    VertexId r = root_of(cfg, g);
    double rho = cfg.value("rho", 2.0);
    double eps = cfg.value("eps", 0.5);
    std::vector<double> mu(g.vertex_count(), 1.0);
    if (auto p = optional_path(cfg, "mu"); !p.empty()) {
        mu = read_measure_file(p, g.vertex_count());
    }
    auto res = bicriteria_is(g, r, rho, eps, mu);
    DistanceMatrix dg(g);
    double min_sep = kInfinity;
    for (VertexId u : res.vertices) {
        for (VertexId v : res.vertices) {
            if (u != v) {
                min_sep = std::min(min_sep, dg(u, v));
            }
        }
    }
    const double need = (1 - res.eps) * rho;
    Outcome o;
    json shifts = json::array();
    for (const auto& s : res.shifts) {
        shifts.push_back({{"sigma", s.sigma},
                          {"value", s.value},
                          {"size", s.vertices.size()},
                          {"layers", s.layers},
                          {"max_host_width", s.max_host_width},
                          {"max_layer_diameter", s.max_layer_diameter}});
    }
    o.result = {{"n", g.vertex_count()},
                {"rho", rho},
                {"requested_eps", res.requested_eps},
                {"eps", res.eps},
                {"best_sigma", res.best_sigma},
                {"value", res.value},
                {"set", one_indexed(res.vertices)},
                {"min_separation", is_infinite(min_sep) ? json(nullptr) : json(min_sep)},
                {"required_separation", need},
                {"shifts", shifts}};
    o.checks["separated"] = is_infinite(min_sep) || min_sep >= need - kLengthTolerance * std::max(1.0, rho);
    WeightedGraph unit(g.vertex_count());
    for (const auto& e : g.edges()) {
        unit.add_edge(e.u, e.v, e.w / rho, e.structural);
    }
    auto counts = shift_membership_counts(unit, r, res.eps);
    std::size_t need_count = static_cast<std::size_t>(std::llround(2 / res.eps)) - 2;
    o.checks["layer_counting"] = *std::min_element(counts.begin(), counts.end()) >= need_count;
    if (g.vertex_count() <= kMaxOracleTerminals) {
        std::vector<VertexId> all(g.vertex_count());
        std::iota(all.begin(), all.end(), 0);
        auto opt = brute_force_rho_is(g, rho, mu, all);
        o.result["optimum"] = opt.value;
        o.checks["approximation"] = res.value >= (1 - res.eps) * opt.value - kLengthTolerance;
    }
    return o;
}

Outcome run_verify(const json& cfg) {
    auto g = read_graph_file(require_path(cfg, "in"));
    Outcome o;
    o.result = json::object();
    std::string host_path = optional_path(cfg, "host");
    std::string td_path = optional_path(cfg, "td");
    if (host_path.empty()) {
        std::size_t n = 0;
        auto td = read_tree_decomposition_file(require_path(cfg, "td"), &n);
        require(n == g.vertex_count(), ErrorKind::validation, "decomposition vertex count differs from the graph");
        auto rep = validate_tree_decomposition(g, td);
        o.result["decomposition"] = decomposition_json(rep);
        o.result["issues"] = rep.issues;
        o.checks["decomposition"] = rep.valid();
        return o;
    }
    auto host = read_graph_file(host_path);
    auto emb = read_host_map_file(require_path(cfg, "map"), std::move(host), g.vertex_count());
    DistanceMatrix dg(g);
    auto dist = measure_distortion(dg, emb, distortion_options(cfg));
    o.result["distortion"] = distortion_json(dist);
    o.result["host_edges_exact"] = host_edges_exact(dg, emb);
    o.checks["dominating"] = dist.dominating;
    if (cfg.contains("eps")) {
        double eps = cfg["eps"].get<double>();
        Length d = diameter(g);
        o.result["gap_bound"] = kEmbeddingGapConstant * eps * d;
        o.checks["gap"] = dist.max_gap <= kEmbeddingGapConstant * eps * d + kLengthTolerance;
    }
    if (!td_path.empty()) {
        std::size_t n = 0;
        auto td = read_tree_decomposition_file(td_path, &n);
        auto rep = validate_tree_decomposition(emb.host, td);
        o.result["decomposition"] = decomposition_json(rep);
        o.checks["decomposition"] = rep.valid();
    }
    return o;
}

}  // namespace

json run_experiment(const json& config) {
    require(config.is_object(), ErrorKind::argument, "config must be a JSON object");
    std::string command = config.value("command", std::string());
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        if (command == "gen") {
            o = run_gen(config);
        } else if (command == "emulator") {
            o = run_emulator(config);
        } else if (command == "rspd") {
            o = run_rspd(config);
        } else if (command == "embed") {
            o = run_embed(config);
        } else if (command == "stochastic") {
            o = run_stochastic(config);
        } else if (command == "baker-is") {
            o = run_baker(config);
        } else if (command == "verify") {
            o = run_verify(config);
        } else {
            fail(ErrorKind::argument, "unknown command \"" + command + "\"");
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::argument, std::string("bad config value: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = true;
    for (const auto& [name, ok] : o.checks.items()) {
        pass = pass && ok.get<bool>();
    }
    json report = {{"schema_version", kReportSchemaVersion},
                   {"version", kLibraryVersion},
                   {"command", command},
                   {"config", config},
                   {"seed", config.value("seed", std::uint64_t{1})},
                   {"result", o.result},
                   {"checks", o.checks},
                   {"pass", pass}};
    report["timing"] = {{"wall_seconds", seconds}};
    return report;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
        return;
    }
    std::string value = j.is_string() ? j.get<std::string>() : j.dump();
    bool quote = value.find_first_of(",\"\n") != std::string::npos;
    if (quote) {
        std::string esc;
        for (char c : value) {
            esc += c;
            if (c == '"') {
                esc += '"';
            }
        }
        value = "\"" + esc + "\"";
    }
    out << prefix << ',' << value << '\n';
}

}  // namespace

std::string report_to_csv(const json& report) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(report, "", out);
    return out.str();
}

}  // namespace lowtw
