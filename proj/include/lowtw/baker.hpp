#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/planar.hpp"

namespace lowtw {

inline constexpr std::size_t kMaxOracleTerminals = 25;

// Largest eps' <= eps with 2/eps' integral.
double snap_baker_eps(double eps);

struct DistanceInterval {
    double lo = 0;
    double hi = 0;
    bool hi_closed = true;

    bool contains(double d) const { return d >= lo && (hi_closed ? d <= hi : d < hi); }
};

struct Layer {
    int j = 0;
    DistanceInterval full;   // I_{j,sigma}
    DistanceInterval inner;  // I^-_{j,sigma}
    std::vector<VertexId> members;  // U
    std::vector<VertexId> core;     // U^-, a subset of members
    ContractedGraph graph;          // G_{j,sigma}; vertex 0 is r (or the contracted disk)
    Length diameter = 0;
};

struct LayerFamily {
    double eps = 0;
    int sigma = 0;
    std::vector<Layer> layers;  // j = -1, 0, 1, ... up to the last non-empty interval
};

// Distances are taken in the units of `g`, i.e. with rho already scaled to 1.
// `eps` must already have integral 2/eps.
LayerFamily build_layers(const WeightedGraph& g, VertexId r, double eps, int sigma);

// Number of shifts sigma whose V^-_sigma holds v, for every v.
std::vector<std::size_t> shift_membership_counts(const WeightedGraph& g, VertexId r, double eps);

struct RhoIndependentSet {
    std::vector<VertexId> vertices;  // sorted
    double value = 0;
};

// Exact maximum-measure subset of `terminals` with pairwise distance >= rho (branch and bound).
RhoIndependentSet brute_force_rho_is(const WeightedGraph& g, double rho, std::span<const double> mu,
                                     std::span<const VertexId> terminals);

struct ShiftResult {
    int sigma = 0;
    std::vector<VertexId> vertices;
    double value = 0;
    std::size_t layers = 0;
    std::size_t max_host_width = 0;
    Length max_layer_diameter = 0;
};

struct BakerResult {
    double requested_eps = 0;
    double eps = 0;  // snapped
    double rho = 0;
    std::vector<VertexId> vertices;
    double value = 0;
    int best_sigma = 0;
    std::vector<ShiftResult> shifts;
};

// Layer by shifted root-distance intervals, embed each layer with additive error eps^2/12 times
// its diameter, solve exactly on the host, pull back and keep the best shift.
BakerResult bicriteria_is(const WeightedGraph& g, VertexId r, double rho, double eps, std::span<const double> mu);

}  // namespace lowtw
