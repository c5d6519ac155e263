#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lowtw {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Length = double;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

// IEEE infinity is the "no path" sentinel: finite + kInfinity == kInfinity.
inline constexpr Length kInfinity = std::numeric_limits<Length>::infinity();
inline constexpr double kLengthTolerance = 1e-9;

inline bool is_infinite(Length d) { return d == kInfinity; }

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    Length w = 0;
    // Set on triangulation edges. Structural edges carry topology only and are
    // skipped by every distance computation.
    bool structural = false;

    VertexId other(VertexId x) const { return x == u ? v : u; }
};

struct Arc {
    VertexId to;
    EdgeId edge;
};

// Per-vertex cyclic order of incident edge ids (a combinatorial embedding).
using RotationSystem = std::vector<std::vector<EdgeId>>;

class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t vertex_count);

    VertexId add_vertex();
    EdgeId add_edge(VertexId u, VertexId v, Length w, bool structural = false);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Arc> arcs(VertexId v) const { return adjacency_[v]; }
    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }

    bool has_rotation() const { return !rotation_.empty() || vertex_count() == 0; }
    const RotationSystem& rotation() const { return rotation_; }
    // Validates that every vertex lists each incident edge exactly once.
    void set_rotation(RotationSystem rotation);
    void clear_rotation() { rotation_.clear(); }

    void check_vertex(VertexId v) const;
    bool is_connected() const;

    // Collapses parallel edges to the lightest copy. The rotation system, if any,
    // keeps the surviving copy in place, which preserves planarity.
    WeightedGraph deduplicated() const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> adjacency_;
    RotationSystem rotation_;
};

class RootedTree {
public:
    RootedTree() = default;
    RootedTree(VertexId root, std::vector<VertexId> parent, std::vector<Length> parent_weight);

    // `g` must be a tree (connected, n-1 non-structural edges).
    static RootedTree from_tree_graph(const WeightedGraph& g, VertexId root);

    VertexId root() const { return root_; }
    std::size_t vertex_count() const { return parent_.size(); }
    VertexId parent(VertexId v) const { return parent_[v]; }
    Length parent_weight(VertexId v) const { return parent_weight_[v]; }
    std::span<const VertexId> children(VertexId v) const;
    // Root first, children in ascending id order.
    const std::vector<VertexId>& preorder() const { return preorder_; }
    const std::vector<Length>& depths() const { return depth_; }

    WeightedGraph to_graph() const;

private:
    VertexId root_ = 0;
    std::vector<VertexId> parent_;
    std::vector<Length> parent_weight_;
    std::vector<std::size_t> child_begin_;
    std::vector<VertexId> child_list_;
    std::vector<VertexId> preorder_;
    std::vector<Length> depth_;
};

struct ShortestPaths {
    VertexId source = 0;
    std::vector<Length> dist;
    std::vector<VertexId> pred;
    std::vector<EdgeId> pred_edge;

    // Throws a domain error when some vertex is unreachable.
    RootedTree tree() const;
};

// Ties on distance go to the lower predecessor id.
ShortestPaths dijkstra(const WeightedGraph& g, VertexId s);
std::vector<Length> dijkstra_distances(const WeightedGraph& g, VertexId s);
// Distances from the nearest of `sources` (all start at 0).
std::vector<Length> dijkstra_distances(const WeightedGraph& g, std::span<const VertexId> sources);

// Row-major n*n matrix of exact distances.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(const WeightedGraph& g);

    std::size_t size() const { return n_; }
    Length operator()(VertexId u, VertexId v) const { return data_[std::size_t{u} * n_ + v]; }
    std::span<const Length> row(VertexId u) const { return {data_.data() + std::size_t{u} * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<Length> data_;
};

Length hop_bounded_distance(const WeightedGraph& g, VertexId u, VertexId v, std::size_t hops);
std::vector<Length> hop_bounded_distances(const WeightedGraph& g, VertexId u, std::size_t hops);

// Throws a domain error on a disconnected graph.
Length diameter(const WeightedGraph& g);
Length eccentricity(const WeightedGraph& g, VertexId v);

struct TreeDecomposition {
    std::vector<std::vector<VertexId>> bags;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

    std::size_t width() const;
    // Sorts and dedups every bag.
    void normalize();
};

struct TreeDecompositionReport {
    bool tree_structure = true;
    bool vertex_coverage = true;
    bool edge_coverage = true;
    bool connected_subtrees = true;
    std::size_t width = 0;
    std::vector<std::string> issues;

    bool valid() const { return tree_structure && vertex_coverage && edge_coverage && connected_subtrees; }
};

TreeDecompositionReport validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td);

}  // namespace lowtw
