#ifndef LOWTW_H
#define LOWTW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LOWTW_BUILDING)
#define LOWTW_API __declspec(dllexport)
#else
#define LOWTW_API __declspec(dllimport)
#endif
#else
#define LOWTW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lowtw_status {
    LOWTW_OK = 0,
    LOWTW_E_ARGUMENT = 1,
    LOWTW_E_DOMAIN = 2,
    LOWTW_E_EMBEDDING = 3,
    LOWTW_E_RESOURCE = 4,
    LOWTW_E_IO = 5,
    LOWTW_E_VALIDATION = 6,
    LOWTW_E_INTERNAL = 7
} lowtw_status;

typedef struct lowtw_graph lowtw_graph;
typedef struct lowtw_embedding lowtw_embedding;

/* Vertex ids are 0-indexed here; files and the CLI use 1-indexed ids. */

LOWTW_API const char* lowtw_version(void);
LOWTW_API const char* lowtw_status_name(lowtw_status status);
/* Message of the last failing call on this thread ("" if none). */
LOWTW_API const char* lowtw_last_error(void);
LOWTW_API void lowtw_string_free(char* s);

LOWTW_API lowtw_status lowtw_graph_create(size_t vertex_count, lowtw_graph** out);
LOWTW_API lowtw_status lowtw_graph_add_edge(lowtw_graph* g, size_t u, size_t v, double w);
/* Rotation of vertex v as edge ids in insertion order; every vertex must be set before use. */
LOWTW_API lowtw_status lowtw_graph_set_rotation(lowtw_graph* g, size_t v, const size_t* edges, size_t count);
LOWTW_API lowtw_status lowtw_graph_read(const char* path, lowtw_graph** out);
LOWTW_API lowtw_status lowtw_graph_write(const lowtw_graph* g, const char* path);
/* family: grid | subdiv | lbinstance | geodesic | fractal; params as a JSON object. */
LOWTW_API lowtw_status lowtw_graph_generate(const char* family, const char* params_json, lowtw_graph** out);
LOWTW_API size_t lowtw_graph_vertex_count(const lowtw_graph* g);
LOWTW_API size_t lowtw_graph_edge_count(const lowtw_graph* g);
LOWTW_API int lowtw_graph_is_planar(const lowtw_graph* g);
LOWTW_API lowtw_status lowtw_graph_distance(const lowtw_graph* g, size_t u, size_t v, double* out);
LOWTW_API lowtw_status lowtw_graph_diameter(const lowtw_graph* g, double* out);
LOWTW_API void lowtw_graph_free(lowtw_graph* g);

/* Additive embedding into a bounded-treewidth host. */
LOWTW_API lowtw_status lowtw_embed(const lowtw_graph* g, size_t root, double eps, size_t eta,
                                   lowtw_embedding** out);
/* One trial of the rooted stochastic embedding. */
LOWTW_API lowtw_status lowtw_rooted_embed(const lowtw_graph* g, size_t root, double eps, uint64_t seed,
                                          uint64_t trial, lowtw_embedding** out);
LOWTW_API size_t lowtw_embedding_host_vertex_count(const lowtw_embedding* e);
LOWTW_API size_t lowtw_embedding_host_edge_count(const lowtw_embedding* e);
LOWTW_API size_t lowtw_embedding_width(const lowtw_embedding* e);
LOWTW_API lowtw_status lowtw_embedding_canonical(const lowtw_embedding* e, size_t v, size_t* out);
LOWTW_API lowtw_status lowtw_embedding_copy_count(const lowtw_embedding* e, size_t v, size_t* out);
LOWTW_API lowtw_status lowtw_embedding_distance(const lowtw_embedding* e, size_t u, size_t v, double* out);
/* Distortion of `e` against its source graph, as a JSON object. */
LOWTW_API lowtw_status lowtw_embedding_report(const lowtw_embedding* e, const lowtw_graph* g, char** out_json);
LOWTW_API void lowtw_embedding_free(lowtw_embedding* e);

/* Runs a pipeline from a JSON config ("command": gen | emulator | rspd | embed | stochastic | baker-is | verify). */
LOWTW_API lowtw_status lowtw_run(const char* config_json, char** out_report_json);
LOWTW_API lowtw_status lowtw_report_csv(const char* report_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif
