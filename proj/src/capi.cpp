#include "lowtw/lowtw.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "lowtw/error.hpp"
#include "lowtw/graph.hpp"
#include "lowtw/harness.hpp"
#include "lowtw/io.hpp"
#include "lowtw/planar.hpp"
#include "lowtw/portal_embedding.hpp"
#include "lowtw/rooted_stochastic.hpp"
#include "lowtw/rspd.hpp"

struct lowtw_graph {
    lowtw::WeightedGraph graph;
    lowtw::RotationSystem pending;
    std::vector<char> rotation_set;

    // Applies the rotation once every vertex has one.
    const lowtw::WeightedGraph& ready() {
        if (!rotation_set.empty()) {
            std::size_t set = 0;
            for (char c : rotation_set) {
                set += c;
            }
            if (set == rotation_set.size()) {
                graph.set_rotation(pending);
                rotation_set.clear();
                pending.clear();
            } else if (set > 0) {
                lowtw::fail(lowtw::ErrorKind::embedding, "rotation set on some vertices only");
            }
        }
        return graph;
    }
};

struct lowtw_embedding {
    lowtw::OneToManyEmbedding embedding;
};

namespace {

thread_local std::string last_error;

lowtw_status status_of(lowtw::ErrorKind kind) {
    switch (kind) {
        case lowtw::ErrorKind::argument: return LOWTW_E_ARGUMENT;
        case lowtw::ErrorKind::domain: return LOWTW_E_DOMAIN;
        case lowtw::ErrorKind::embedding: return LOWTW_E_EMBEDDING;
        case lowtw::ErrorKind::resource: return LOWTW_E_RESOURCE;
        case lowtw::ErrorKind::io: return LOWTW_E_IO;
        case lowtw::ErrorKind::validation: return LOWTW_E_VALIDATION;
    }
    return LOWTW_E_INTERNAL;
}

template <class F>
lowtw_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return LOWTW_OK;
    } catch (const lowtw::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return LOWTW_E_ARGUMENT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return LOWTW_E_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LOWTW_E_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return LOWTW_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) {
        lowtw::fail(lowtw::ErrorKind::argument, std::string(what) + " is null");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

lowtw::VertexId vertex(std::size_t v, std::size_t n) {
    if (v >= n) {
        lowtw::fail(lowtw::ErrorKind::argument, "vertex id out of range");
    }
    return static_cast<lowtw::VertexId>(v);
}

}  // namespace

extern "C" {

const char* lowtw_version(void) { return lowtw::kLibraryVersion; }

const char* lowtw_status_name(lowtw_status status) {
    switch (status) {
        case LOWTW_OK: return "ok";
        case LOWTW_E_ARGUMENT: return "argument";
        case LOWTW_E_DOMAIN: return "domain";
        case LOWTW_E_EMBEDDING: return "embedding";
        case LOWTW_E_RESOURCE: return "resource";
        case LOWTW_E_IO: return "io";
        case LOWTW_E_VALIDATION: return "validation";
        case LOWTW_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* lowtw_last_error(void) { return last_error.c_str(); }

void lowtw_string_free(char* s) { delete[] s; }

lowtw_status lowtw_graph_create(size_t vertex_count, lowtw_graph** out) {
    return guarded([&] {
        need(out, "out");
        *out = new lowtw_graph{lowtw::WeightedGraph(vertex_count), {}, {}};
    });
}

lowtw_status lowtw_graph_add_edge(lowtw_graph* g, size_t u, size_t v, double w) {
    return guarded([&] {
        need(g, "graph");
        auto n = g->graph.vertex_count();
        lowtw::require(u != v, lowtw::ErrorKind::argument, "self-loops are not allowed");
        lowtw::require(w >= 0 && w < lowtw::kInfinity, lowtw::ErrorKind::argument,
                       "edge weights must be finite and non-negative");
        g->graph.clear_rotation();
        g->graph.add_edge(vertex(u, n), vertex(v, n), w);
    });
}

lowtw_status lowtw_graph_set_rotation(lowtw_graph* g, size_t v, const size_t* edges, size_t count) {
    return guarded([&] {
        need(g, "graph");
        auto n = g->graph.vertex_count();
        vertex(v, n);
        if (count > 0) {
            need(edges, "edges");
        }
        if (g->rotation_set.empty()) {
            g->pending.assign(n, {});
            g->rotation_set.assign(n, 0);
        }
        auto& list = g->pending[v];
        list.clear();
        for (size_t i = 0; i < count; ++i) {
            lowtw::require(edges[i] < g->graph.edge_count(), lowtw::ErrorKind::argument, "edge id out of range");
            list.push_back(static_cast<lowtw::EdgeId>(edges[i]));
        }
        g->rotation_set[v] = 1;
    });
}

lowtw_status lowtw_graph_read(const char* path, lowtw_graph** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new lowtw_graph{lowtw::read_graph_file(path), {}, {}};
    });
}

lowtw_status lowtw_graph_write(const lowtw_graph* g, const char* path) {
    return guarded([&] {
        need(g, "graph");
        need(path, "path");
        lowtw::write_graph_file(path, const_cast<lowtw_graph*>(g)->ready());
    });
}

lowtw_status lowtw_graph_generate(const char* family, const char* params_json, lowtw_graph** out) {
    return guarded([&] {
        need(family, "family");
        need(out, "out");
        auto params = params_json ? nlohmann::json::parse(params_json) : nlohmann::json::object();
        *out = new lowtw_graph{lowtw::generate_family(family, params), {}, {}};
    });
}

size_t lowtw_graph_vertex_count(const lowtw_graph* g) { return g ? g->graph.vertex_count() : 0; }

size_t lowtw_graph_edge_count(const lowtw_graph* g) { return g ? g->graph.edge_count() : 0; }

int lowtw_graph_is_planar(const lowtw_graph* g) {
    int planar = 0;
    guarded([&] {
        need(g, "graph");
        const auto& gr = const_cast<lowtw_graph*>(g)->ready();
        planar = gr.has_rotation() && lowtw::is_planar_embedding(gr) ? 1 : 0;
    });
    return planar;
}

lowtw_status lowtw_graph_distance(const lowtw_graph* g, size_t u, size_t v, double* out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        auto n = g->graph.vertex_count();
        auto d = lowtw::dijkstra_distances(g->graph, vertex(u, n));
        *out = d[vertex(v, n)];
    });
}

lowtw_status lowtw_graph_diameter(const lowtw_graph* g, double* out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = lowtw::diameter(g->graph);
    });
}

void lowtw_graph_free(lowtw_graph* g) { delete g; }

lowtw_status lowtw_embed(const lowtw_graph* g, size_t root, double eps, size_t eta, lowtw_embedding** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        const auto& gr = const_cast<lowtw_graph*>(g)->ready();
        auto phi = lowtw::build_rspd(gr, vertex(root, gr.vertex_count()), eta ? eta : lowtw::kDefaultEta);
        auto pe = lowtw::build_host_graph(gr, phi, eps);
        *out = new lowtw_embedding{std::move(pe.embedding)};
    });
}

lowtw_status lowtw_rooted_embed(const lowtw_graph* g, size_t root, double eps, uint64_t seed, uint64_t trial,
                                lowtw_embedding** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        const auto& gr = const_cast<lowtw_graph*>(g)->ready();
        auto re = lowtw::build_rooted_embedding(gr, vertex(root, gr.vertex_count()), eps, seed, trial);
        *out = new lowtw_embedding{std::move(re.embedding)};
    });
}

size_t lowtw_embedding_host_vertex_count(const lowtw_embedding* e) {
    return e ? e->embedding.host.vertex_count() : 0;
}

size_t lowtw_embedding_host_edge_count(const lowtw_embedding* e) { return e ? e->embedding.host.edge_count() : 0; }

size_t lowtw_embedding_width(const lowtw_embedding* e) { return e ? e->embedding.host_decomposition.width() : 0; }

lowtw_status lowtw_embedding_canonical(const lowtw_embedding* e, size_t v, size_t* out) {
    return guarded([&] {
        need(e, "embedding");
        need(out, "out");
        *out = e->embedding.canonical(vertex(v, e->embedding.source_count()));
    });
}

lowtw_status lowtw_embedding_copy_count(const lowtw_embedding* e, size_t v, size_t* out) {
    return guarded([&] {
        need(e, "embedding");
        need(out, "out");
        *out = e->embedding.copies[vertex(v, e->embedding.source_count())].size();
    });
}

lowtw_status lowtw_embedding_distance(const lowtw_embedding* e, size_t u, size_t v, double* out) {
    return guarded([&] {
        need(e, "embedding");
        need(out, "out");
        const auto& emb = e->embedding;
        auto n = emb.source_count();
        auto d = lowtw::dijkstra_distances(emb.host, emb.canonical(vertex(u, n)));
        *out = d[emb.canonical(vertex(v, n))];
    });
}

lowtw_status lowtw_embedding_report(const lowtw_embedding* e, const lowtw_graph* g, char** out_json) {
    return guarded([&] {
        need(e, "embedding");
        need(g, "graph");
        need(out_json, "out");
        lowtw::require(e->embedding.source_count() == g->graph.vertex_count(), lowtw::ErrorKind::argument,
                       "embedding does not match the graph");
        auto d = lowtw::measure_distortion(g->graph, e->embedding);
        auto td = lowtw::validate_tree_decomposition(e->embedding.host, e->embedding.host_decomposition);
        nlohmann::json j = {{"pairs", d.pairs},
                            {"exhaustive", d.exhaustive},
                            {"min_gap", d.min_gap},
                            {"max_gap", d.max_gap},
                            {"max_canonical_gap", d.max_canonical_gap},
                            {"mean_canonical_gap", d.mean_canonical_gap},
                            {"max_ratio", d.max_ratio},
                            {"dominating", d.dominating},
                            {"width", td.width},
                            {"decomposition_valid", td.valid()}};
        *out_json = dup_string(j.dump());
    });
}

void lowtw_embedding_free(lowtw_embedding* e) { delete e; }

lowtw_status lowtw_run(const char* config_json, char** out_report_json) {
    return guarded([&] {
        need(config_json, "config");
        need(out_report_json, "out");
        auto report = lowtw::run_experiment(nlohmann::json::parse(config_json));
        *out_report_json = dup_string(report.dump(2));
    });
}

lowtw_status lowtw_report_csv(const char* report_json, char** out_csv) {
    return guarded([&] {
        need(report_json, "report");
        need(out_csv, "out");
        *out_csv = dup_string(lowtw::report_to_csv(nlohmann::json::parse(report_json)));
    });
}

}  // extern "C"
