#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowtw/calibration.hpp"
#include "lowtw/graph.hpp"
#include "lowtw/planar.hpp"
#include "lowtw/portal_embedding.hpp"
#include "lowtw/rspd.hpp"

namespace lowtw {

inline constexpr double kMaxRootedEps = 0.25;

struct BandSlicing {
    double eps = 0;
    double x = 0;
    // Minimum positive d(r, v); thresholds below are in units of this.
    Length scale = 1;
    VertexId root = 0;
    std::vector<Length> root_distance;
    std::vector<int> band_of;  // -1 for the root
    std::vector<std::vector<VertexId>> bands;

    // U_i and L_i = U_{i-1}, in the graph's own units.
    double upper(int i) const;
    double lower(int i) const { return upper(i - 1); }
    // The same thresholds in rescaled units (min distance 1).
    double upper_scaled(int i) const;
    double lower_scaled(int i) const { return upper_scaled(i - 1); }
};

// Thresholds from an explicit x in [0, 1); eps in (0, 1).
BandSlicing slice_bands(const WeightedGraph& g, VertexId r, double eps, double x);
BandSlicing sample_bands(const WeightedGraph& g, VertexId r, double eps, std::uint64_t seed,
                         std::uint64_t trial = 0);

// G_i: d >= U_i deleted, d < L_i contracted into r (vertex 0), root edges weigh d(r, v).
ContractedGraph band_graph(const WeightedGraph& g, const BandSlicing& s, int i);

// d(r, v) lies in [L_i / eps, eps * U_i] for v's band i.
bool is_successful(const BandSlicing& s, VertexId v);

struct BandRecord {
    int band = 0;
    std::size_t members = 0;
    std::size_t host_vertices = 0;
    std::size_t host_edges = 0;
    std::size_t width = 0;
    bool fallback_clique = false;
};

struct RootedEmbedding {
    OneToManyEmbedding embedding;  // canonical copy of v is host vertex v
    BandSlicing slicing;
    std::vector<BandRecord> bands;
    double band_eps = 0;
};

// Per-band portal embedding at eps^(1/eps), glued at r, plus star edges from r.
RootedEmbedding build_rooted_embedding(const WeightedGraph& g, VertexId r, double eps, std::uint64_t seed,
                                       std::uint64_t trial = 0, std::size_t eta = kDefaultEta);

struct RootedStatsOptions {
    double gap_constant = kRootedGapConstant;
    std::size_t eta = kDefaultEta;
};

struct RootedStats {
    std::size_t trials = 0;
    std::size_t vertices = 0;
    double eps = 0;
    double scale = 1;
    double gap_constant = 0;
    std::size_t distinct_band_graphs = 0;
    // Empirical per-vertex unsuccessful frequency.
    double max_unsuccessful_rate = 0;
    double mean_unsuccessful_rate = 0;
    // Mean gap over trials, divided by d(r,u) + d(r,v); maximum over pairs.
    double max_normalized_mean_gap = 0;
    double max_mean_gap = 0;
    // (trial, successful u) with some v over the C * eps bound.
    std::size_t ramsey_violations = 0;
    std::size_t successful_checks = 0;
    double worst_ramsey_excess = 0;
    // Successful u, a shortest path inside its band, gap over 2 eps d(r,u).
    std::size_t contained_violations = 0;
    std::size_t contained_checks = 0;
    std::size_t dominance_violations = 0;
    std::size_t diameter_violations = 0;
    std::size_t max_width = 0;
};

RootedStats rooted_distortion_stats(const WeightedGraph& g, VertexId r, double eps, std::size_t trials,
                                    std::uint64_t seed, const RootedStatsOptions& opts = {});

}  // namespace lowtw
