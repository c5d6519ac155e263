#pragma once

#include <array>
#include <span>
#include <vector>

#include "lowtw/graph.hpp"

namespace lowtw {

// A dart is an edge traversed from `from` to `to`.
struct Dart {
    EdgeId edge;
    VertexId from;
    VertexId to;
};

struct FaceStructure {
    // Boundary walk of every face, following the rotation successor rule:
    // after arriving at v along e, leave along the edge after e in rot(v).
    std::vector<std::vector<Dart>> faces;
    // edge_faces[e][0] is the face of dart u->v, [1] of v->u (u = edge(e).u).
    std::vector<std::array<std::size_t, 2>> edge_faces;

    // Longest boundary walk, lowest index on ties.
    std::size_t outer_face() const;
};

// Requires a rotation system.
FaceStructure trace_faces(const WeightedGraph& g);

// Euler check V - E + F = 1 + C over the rotation system.
bool is_planar_embedding(const WeightedGraph& g);

struct TriangulateOptions {
    // Leaves the longest face untouched.
    bool keep_outer_face = true;
};

// Adds structural chords until every face (except optionally the outer one) is a
// triangle. Original edge ids are preserved; chords come after them.
WeightedGraph triangulate(const WeightedGraph& g, TriangulateOptions opts = {});

// Straight-line drawing to rotation system (edges sorted by angle).
RotationSystem rotation_from_coordinates(const WeightedGraph& g, std::span<const double> x,
                                         std::span<const double> y);

enum class RootEdgeWeight {
    root_distance,  // weight d_G(r, v) on each contracted edge r-v
    unit,           // weight 1
};

struct AnnulusSpec {
    Length inner = 0;  // vertices with d(r,v) < inner collapse into r
    Length outer = kInfinity;
    bool outer_inclusive = false;  // keep d(r,v) <= outer instead of < outer
    RootEdgeWeight root_weight = RootEdgeWeight::root_distance;
};

struct ContractedGraph {
    WeightedGraph graph;
    // New vertex 0 is the image of r.
    std::vector<VertexId> to_source;
    std::vector<VertexId> from_source;  // kNoVertex for deleted; r for collapsed vertices
};

// Deletes the far vertices, collapses the inner disk into r and keeps a planar
// rotation system when `g` has one. `dist` holds d_G(r, .).
ContractedGraph contract_annulus(const WeightedGraph& g, VertexId r, std::span<const Length> dist,
                                 const AnnulusSpec& spec);

}  // namespace lowtw
