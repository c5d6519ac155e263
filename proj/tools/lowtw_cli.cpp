#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowtw/lowtw.h"

namespace {

using nlohmann::json;

enum Exit { kPass = 0, kUsage = 1, kFailed = 2, kResource = 3 };

int exit_for(lowtw_status s) {
    switch (s) {
        case LOWTW_OK: return kPass;
        case LOWTW_E_ARGUMENT:
        case LOWTW_E_IO: return kUsage;
        case LOWTW_E_RESOURCE: return kResource;
        default: return kFailed;
    }
}

// "side=8,weights=random" or a JSON object.
json parse_params(const std::string& text) {
    if (text.empty()) {
        return json::object();
    }
    if (text.front() == '{') {
        return json::parse(text);
    }
    json out = json::object();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--params", "expected key=value, got \"" + item + "\"");
        }
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        try {
            std::size_t used = 0;
            double d = std::stod(value, &used);
            if (used == value.size()) {
                if (value.find_first_of(".eE") == std::string::npos) {
                    out[key] = std::stoll(value);
                } else {
                    out[key] = d;
                }
                continue;
            }
        } catch (const std::exception&) {
        }
        out[key] = value;
    }
    return out;
}

struct Options {
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string format = "json";
    std::string report;
    std::string in;
    std::string out;
    std::string td;
    std::string map;
    std::string host;
    std::string mu;
    std::string family;
    std::string params;
    std::string sidecar;
    long long root = 1;
    double eps = 0.25;
    double rho = 2.0;
    std::size_t eta = 4;
    std::size_t trials = 200;
    std::size_t pairs = 0;
    std::size_t sources = 0;
    std::size_t exhaustive_limit = 0;
};

void put_path(json& cfg, const char* key, const std::string& value) {
    if (!value.empty()) {
        cfg[key] = value;
    }
}

int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return kPass;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << '\n';
        return kUsage;
    }
    out << text << '\n';
    return kPass;
}

int run(const json& cfg, const Options& o) {
    char* raw = nullptr;
    lowtw_status s = lowtw_run(cfg.dump().c_str(), &raw);
    if (s != LOWTW_OK) {
        std::cerr << "error (" << lowtw_status_name(s) << "): " << lowtw_last_error() << '\n';
        return exit_for(s);
    }
    std::string report(raw);
    lowtw_string_free(raw);
    bool pass = json::parse(report).value("pass", false);
    std::string text = report;
    if (o.format == "csv") {
        char* csv = nullptr;
        s = lowtw_report_csv(report.c_str(), &csv);
        if (s != LOWTW_OK) {
            std::cerr << "error (" << lowtw_status_name(s) << "): " << lowtw_last_error() << '\n';
            return exit_for(s);
        }
        text = csv;
        lowtw_string_free(csv);
    }
    int code = emit(text, o.report);
    if (code != kPass) {
        return code;
    }
    if (!pass) {
        std::cerr << "validation failed; see report checks\n";
        return kFailed;
    }
    return kPass;
}

int reformat(const Options& o) {
    std::ifstream in(o.in);
    if (!in) {
        std::cerr << "error: cannot open " << o.in << '\n';
        return kUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (o.format == "json") {
        try {
            return emit(json::parse(buf.str()).dump(2), o.out);
        } catch (const json::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kUsage;
        }
    }
    char* csv = nullptr;
    lowtw_status s = lowtw_report_csv(buf.str().c_str(), &csv);
    if (s != LOWTW_OK) {
        std::cerr << "error (" << lowtw_status_name(s) << "): " << lowtw_last_error() << '\n';
        return exit_for(s);
    }
    std::string text(csv);
    lowtw_string_free(csv);
    return emit(text, o.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-treewidth embeddings of planar graphs: generators, builders and validators"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "Random seed recorded in every report");
    app.add_option("--jobs", o.jobs, "Worker count (recorded; pipelines run on one thread)")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    auto add_in = [&](CLI::App* c) { c->add_option("--in", o.in, "Input graph (.gr)")->required(); };
    auto add_root = [&](CLI::App* c) { c->add_option("--root", o.root, "Root vertex (1-indexed)"); };
    auto add_report = [&](CLI::App* c) { c->add_option("--report", o.report, "Report path (stdout if absent)"); };

    auto* gen = app.add_subcommand("gen", "Generate an instance family");
    gen->add_option("--family", o.family, "grid | subdiv | lbinstance | geodesic | fractal")
        ->required()
        ->check(CLI::IsMember({"grid", "subdiv", "lbinstance", "geodesic", "fractal"}));
    gen->add_option("--params", o.params, "key=value list or JSON object");
    gen->add_option("--out", o.out, "Output graph (.gr)")->required();
    gen->add_option("--sidecar", o.sidecar, "Metadata JSON (default: <out>.json)");
    add_report(gen);

    auto* emu = app.add_subcommand("emulator", "Low-hop emulator of a tree");
    add_in(emu);
    add_root(emu);
    emu->add_option("--out", o.out, "Emulator graph (.gr)");
    emu->add_option("--td", o.td, "Emulator decomposition (.td)");
    emu->add_option("--pairs", o.pairs, "Sampled pairs above 400 vertices");
    add_report(emu);

    auto* rspd = app.add_subcommand("rspd", "Rooted shortest-path decomposition");
    add_in(rspd);
    add_root(rspd);
    rspd->add_option("--eta", o.eta, "Boundary path budget")->check(CLI::Range(3, 1 << 20));
    rspd->add_option("--pairs", o.pairs, "Separation pairs to sample");
    add_report(rspd);

    auto* embed = app.add_subcommand("embed", "Additive embedding into a bounded-treewidth host");
    add_in(embed);
    add_root(embed);
    embed->add_option("--eps", o.eps, "Distortion parameter in (0,1)");
    embed->add_option("--eta", o.eta, "Boundary path budget")->check(CLI::Range(3, 1 << 20));
    embed->add_option("--out", o.out, "Host graph (.gr)");
    embed->add_option("--td", o.td, "Host decomposition (.td)");
    embed->add_option("--map", o.map, "Host map");
    embed->add_option("--sources", o.sources, "Sampled sources above the exhaustive limit");
    embed->add_option("--exhaustive-limit", o.exhaustive_limit, "Measure all pairs up to this many vertices");
    add_report(embed);

    auto* sto = app.add_subcommand("stochastic", "Rooted stochastic embedding, Monte Carlo");
    add_in(sto);
    add_root(sto);
    sto->add_option("--eps", o.eps, "Parameter in (0,1/4]");
    sto->add_option("--trials", o.trials, "Trial count")->check(CLI::PositiveNumber);
    sto->add_option("--eta", o.eta, "Boundary path budget")->check(CLI::Range(3, 1 << 20));
    sto->add_option("--out", o.out, "Host of trial 0 (.gr)");
    sto->add_option("--td", o.td, "Decomposition of trial 0 (.td)");
    sto->add_option("--map", o.map, "Host map of trial 0");
    add_report(sto);

    auto* baker = app.add_subcommand("baker-is", "Bicriteria rho-independent set");
    add_in(baker);
    add_root(baker);
    baker->add_option("--rho", o.rho, "Separation")->check(CLI::PositiveNumber);
    baker->add_option("--eps", o.eps, "Slack in (0,1/2]");
    baker->add_option("--mu", o.mu, "Vertex measures (CSV)");
    add_report(baker);

    auto* verify = app.add_subcommand("verify", "Check a decomposition or an embedding");
    add_in(verify);
    verify->add_option("--td", o.td, "Tree decomposition (.td)");
    verify->add_option("--host", o.host, "Host graph (.gr)");
    verify->add_option("--map", o.map, "Host map");
    verify->add_option("--eps", o.eps, "Check the additive gap bound for this eps");
    add_report(verify);

    auto* rep = app.add_subcommand("report", "Reformat a report");
    rep->add_option("--in", o.in, "Report JSON")->required();
    rep->add_option("--out", o.out, "Output path (stdout if absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (rep->parsed()) {
        return reformat(o);
    }

    json cfg = {{"seed", o.seed}, {"jobs", o.jobs}};
    if (gen->parsed()) {
        json params;
        try {
            params = parse_params(o.params);
        } catch (const std::exception& e) {
            std::cerr << "error: bad --params: " << e.what() << '\n';
            return kUsage;
        }
        cfg["command"] = "gen";
        cfg["family"] = o.family;
        cfg["params"] = params;
        cfg["out"] = o.out;
        put_path(cfg, "sidecar", o.sidecar);
        return run(cfg, o);
    }
    cfg["in"] = o.in;
    cfg["root"] = o.root;
    put_path(cfg, "out", o.out);
    put_path(cfg, "td", o.td);
    put_path(cfg, "map", o.map);
    if (o.pairs) {
        cfg["pairs"] = o.pairs;
    }
    if (emu->parsed()) {
        cfg["command"] = "emulator";
    } else if (rspd->parsed()) {
        cfg["command"] = "rspd";
        cfg["eta"] = o.eta;
    } else if (embed->parsed()) {
        cfg["command"] = "embed";
        cfg["eps"] = o.eps;
        cfg["eta"] = o.eta;
        if (o.sources) {
            cfg["sources"] = o.sources;
        }
        if (o.exhaustive_limit) {
            cfg["exhaustive_limit"] = o.exhaustive_limit;
        }
    } else if (sto->parsed()) {
        cfg["command"] = "stochastic";
        cfg["eps"] = o.eps;
        cfg["eta"] = o.eta;
        cfg["trials"] = o.trials;
    } else if (baker->parsed()) {
        cfg["command"] = "baker-is";
        cfg["rho"] = o.rho;
        cfg["eps"] = o.eps;
        put_path(cfg, "mu", o.mu);
    } else if (verify->parsed()) {
        cfg["command"] = "verify";
        put_path(cfg, "host", o.host);
        if (verify->count("--eps")) {
            cfg["eps"] = o.eps;
        }
    }
    return run(cfg, o);
}
