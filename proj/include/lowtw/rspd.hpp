#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lowtw/graph.hpp"

namespace lowtw {

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultEta = 4;
inline constexpr std::size_t kMinEta = 3;

struct RspdNode {
    // B: deepest endpoints; the boundary paths are T_r[r, b] for b in B.
    std::vector<VertexId> boundary;
    // Endpoints of the splitting non-tree edge (internal nodes only).
    std::vector<VertexId> separator;
    // Maximal elements of boundary + separator; a node's full separating set.
    std::vector<VertexId> boundary_plus;
    std::vector<VertexId> internal;
    std::vector<VertexId> piece;
    std::size_t parent = kNoNode;
    std::array<std::size_t, 2> children{kNoNode, kNoNode};
    std::size_t depth = 0;

    bool is_leaf() const { return children[0] == kNoNode; }
};

class Rspd {
public:
    VertexId root_vertex = 0;
    std::size_t eta = kDefaultEta;
    RootedTree sp_tree;
    // Preorder; nodes[0] is the root.
    std::vector<RspdNode> nodes;

    void index_tree();
    // True when v lies on T_r[r, b].
    bool on_path(VertexId b, VertexId v) const { return tin_[v] <= tin_[b] && tout_[b] <= tout_[v]; }
    std::size_t tin(VertexId v) const { return tin_[v]; }
    bool on_boundary(std::size_t node, VertexId v) const;
    bool on_boundary_plus(std::size_t node, VertexId v) const;
    std::size_t height() const;
    std::size_t leaf_count() const;

private:
    std::vector<std::size_t> tin_;
    std::vector<std::size_t> tout_;
};

// Triangulates internally, so `g` only needs a planar rotation system.
Rspd build_rspd(const WeightedGraph& g, VertexId r, std::size_t eta = kDefaultEta);

struct RspdReport {
    bool p1 = true;   // height and size
    bool p2a = true;  // boundary-path count
    bool p2b = true;  // leaf size, union and intersection
    bool p2c = true;  // boundary separates the piece
    bool p3 = true;   // leaves cover every edge
    bool shortest_boundaries = true;
    std::size_t height = 0;
    std::size_t node_count = 0;
    std::size_t max_boundary = 0;
    std::size_t max_leaf_internal = 0;
    std::vector<std::string> issues;

    bool valid() const { return p1 && p2a && p2b && p2c && p3 && shortest_boundaries; }
};

double rspd_height_bound(std::size_t n);
RspdReport validate_rspd(const WeightedGraph& g, const Rspd& phi);

// Node sequence from alpha to beta along the decomposition tree.
std::vector<std::size_t> rspd_path_nodes(const Rspd& phi, std::size_t alpha, std::size_t beta);

// Leaf holding v internally, else the lowest-preorder leaf whose boundary holds v.
std::size_t home_leaf(const Rspd& phi, VertexId v);
std::vector<std::size_t> home_leaves(const Rspd& phi);

struct SeparationReport {
    std::size_t pairs_checked = 0;
    std::size_t node_checks = 0;
    std::size_t violations = 0;
    std::size_t structural_edges_on_paths = 0;
};

// Samples vertex pairs with distinct home leaves and checks that the shortest
// path meets the separating set of every node between them.
SeparationReport check_separation(const WeightedGraph& g, const Rspd& phi, std::size_t pairs,
                                  std::uint64_t seed);

}  // namespace lowtw
