#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lowtw/graph.hpp"

namespace lowtw {

// Binary-lifting LCA over a rooted tree; O(log n) distance queries.
class TreeDistanceOracle {
public:
    TreeDistanceOracle() = default;
    explicit TreeDistanceOracle(const RootedTree& t);

    VertexId lca(VertexId u, VertexId v) const;
    Length distance(VertexId u, VertexId v) const;
    std::size_t level(VertexId v) const { return level_[v]; }
    bool is_ancestor(VertexId a, VertexId v) const { return tin_[a] <= tin_[v] && tout_[v] <= tout_[a]; }

private:
    std::vector<std::vector<VertexId>> up_;
    std::vector<std::size_t> level_;
    std::vector<Length> depth_;
    std::vector<std::size_t> tin_;
    std::vector<std::size_t> tout_;
};

Length tree_distance(const RootedTree& t, VertexId u, VertexId v);

// Bottom-up sweep: cut the first vertex whose residual subtree has >= ell+1 vertices.
std::vector<VertexId> chop_to_pieces(const RootedTree& t, std::size_t ell);

// A plus all pairwise LCAs of A. Sorted.
std::vector<VertexId> lca_closure(const RootedTree& t, std::span<const VertexId> a);

struct TreeDivision {
    std::vector<VertexId> separator;
    std::vector<std::vector<VertexId>> components;
    // Separator vertices adjacent to each component (at most two).
    std::vector<std::vector<VertexId>> outgoing;
};

TreeDivision tree_division(const RootedTree& t, std::size_t ell);

// ell = max(1, ceil(sqrt(2n)) - 1)
std::size_t division_parameter(std::size_t n);

// 2 for n <= 4, else 1 + ceil(c * log2 log2 n) with c = 2 / log2(3/2).
std::size_t emulator_hop_bound(std::size_t n);

struct Emulator {
    WeightedGraph graph;
    std::size_t hop_bound = 0;
    TreeDecomposition decomposition;
};

Emulator build_emulator(const RootedTree& t);

}  // namespace lowtw
