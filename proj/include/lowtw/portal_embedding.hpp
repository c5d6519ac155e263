#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/rspd.hpp"

namespace lowtw {

struct PortalSet {
    Length delta = 0;
    std::vector<char> is_portal;
    // Nearest proper portal ancestor (kNoVertex at the root).
    std::vector<VertexId> portal_parent;
    std::vector<VertexId> portals;
};

// Depth-first sweep: v becomes a portal when its nearest portal ancestor is farther than delta.
PortalSet compute_delta_portals(const RootedTree& t_r, Length delta);

// Portals on T_r[r, b], root first.
std::vector<VertexId> path_portals(const PortalSet& ps, VertexId b);

struct OneToManyEmbedding {
    WeightedGraph host;
    // copies[v]: the clan of v; copies[v][0] is the canonical copy.
    std::vector<std::vector<VertexId>> copies;
    std::vector<VertexId> source_of;
    TreeDecomposition host_decomposition;

    std::size_t source_count() const { return copies.size(); }
    VertexId canonical(VertexId v) const { return copies[v][0]; }
};

// Identity map over the source vertices.
OneToManyEmbedding identity_embedding(const WeightedGraph& g);

struct PortalEmbedding {
    OneToManyEmbedding embedding;
    Length diameter = 0;
    Length delta = 0;
    std::size_t max_node_portals = 0;
    std::size_t decomposition_nodes = 0;
    std::size_t emulator_width = 0;
    // Host copy id -> decomposition node (kNoNode for canonical copies).
    std::vector<std::size_t> copy_node;
};

// Host graph built over the decomposition with per-node portal copies.
PortalEmbedding build_host_graph(const WeightedGraph& g, const Rspd& phi, double eps);
PortalEmbedding build_host_graph(const WeightedGraph& g, const Rspd& phi, double eps, const DistanceMatrix& dist);

struct OneToOneEmbedding {
    WeightedGraph host;
    std::vector<VertexId> map;
};

OneToOneEmbedding to_one_to_one(const OneToManyEmbedding& e);

struct DistortionOptions {
    std::size_t exhaustive_limit = 300;  // all sources at or below this many vertices
    std::size_t sampled_sources = 12;
    // In sampled mode, copies per source beyond the canonical one.
    std::size_t sampled_extra_copies = 8;
    std::uint64_t seed = 1;
};

struct DistortionReport {
    std::size_t pairs = 0;
    std::size_t sources = 0;
    bool exhaustive = false;
    // Over pairs and all copy combinations.
    double min_gap = 0;
    double max_gap = 0;
    // Canonical copies only.
    double max_canonical_gap = 0;
    double mean_canonical_gap = 0;
    double max_ratio = 1;
    double mean_ratio = 1;
    // Largest host distance between two copies of one vertex.
    double max_copy_spread = 0;
    bool dominating = true;
};

DistortionReport measure_distortion(const WeightedGraph& g, const OneToManyEmbedding& e,
                                    const DistortionOptions& opts = {});
DistortionReport measure_distortion(const DistanceMatrix& dg, const OneToManyEmbedding& e,
                                    const DistortionOptions& opts = {});

// Every host edge weighs exactly d_G of its endpoints' sources; this certifies dominance.
bool host_edges_exact(const DistanceMatrix& dg, const OneToManyEmbedding& e, double tol = kLengthTolerance);

}  // namespace lowtw
