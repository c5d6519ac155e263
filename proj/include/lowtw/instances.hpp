#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowtw/graph.hpp"

namespace lowtw {

enum class WeightMode { unit, random };

// side x side grid, vertex (row i, column j) = i * side + j, with a straight-line rotation system.
// Random weights are uniform in [1, 10) and depend only on the seed.
WeightedGraph grid(std::size_t side, WeightMode mode = WeightMode::unit, std::uint64_t seed = 0);

// Every edge becomes a k-edge path whose pieces keep the edge's weight, so distances scale by k.
// New vertices follow the originals, edge by edge.
WeightedGraph subdivide(const WeightedGraph& g, std::size_t k);

// `count` unit-weight pendant vertices hung off `host_vertex`.
WeightedGraph star_attach(const WeightedGraph& g, VertexId host_vertex, std::size_t count);

struct LowerBoundInstance {
    WeightedGraph graph;
    std::size_t grid_side = 0;     // n'
    std::size_t subdivision = 21;  // k
    std::size_t core_vertices = 0;  // |V(Q_k)|
    std::size_t pendant_vertices = 0;
};

// n' x n' unit grid with n' = ceil(1/(42 eps)) + 1, 21-subdivided, padded to n vertices by a star on vertex 0.
LowerBoundInstance lower_bound_instance(double eps, std::size_t n);

struct GeodesicGrid {
    WeightedGraph graph;
    std::size_t n = 0;  // the source grid is (n+1) x (n+1)
    VertexId s = 0;
    VertexId t = 0;
    // 2(n+1) edge-disjoint s-t shortest paths covering every edge, as edge ids from s.
    std::vector<std::vector<EdgeId>> paths;
    // Grid vertex i * (n+1) + j -> vertex of the geodesic grid.
    std::vector<VertexId> grid_vertex_map;
};

GeodesicGrid geodesic_grid(std::size_t n);

inline constexpr std::size_t kFractalEdgeBudget = 20'000'000;

struct FractalCopy {
    EdgeId first_edge = 0;  // the copy owns edges [first_edge, first_edge + m)
    VertexId s = 0;
    VertexId t = 0;
};

struct FractalInstance {
    WeightedGraph graph;
    std::size_t level = 1;
    std::size_t n = 0;
    std::size_t base_edge_count = 0;  // m
    std::size_t path_count = 0;       // rho = 2(n+1)
    std::size_t path_hop_length = 0;  // 4n
    VertexId s = 0;
    VertexId t = 0;
    // The m^(k-1) edge-disjoint copies of H_1 made by the last replacement round.
    std::vector<FractalCopy> copies;
};

// H_1 is the geodesic grid; H_k replaces each edge {a, b} (a < b) of H_(k-1) by a copy with s -> a, t -> b.
FractalInstance fractal(std::size_t n, std::size_t k, std::size_t edge_budget = kFractalEdgeBudget);

}  // namespace lowtw
