#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/portal_embedding.hpp"

namespace lowtw {

// PACE-style graph text: "p tw n m", then "u v [w]" per edge (1-indexed, w defaults to 1, a trailing
// "s" marks a structural edge). "c rot v e1 e2 ..." lines carry the rotation with 1-indexed edge ids.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_graph_file(const std::string& path, const WeightedGraph& g);

// PACE .td: "s td bags width+1 n", "b i v...", then "i j" tree edges (all 1-indexed).
TreeDecomposition read_tree_decomposition(std::istream& in, std::size_t* vertex_count = nullptr);
TreeDecomposition read_tree_decomposition_file(const std::string& path, std::size_t* vertex_count = nullptr);
void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td, std::size_t vertex_count);
void write_tree_decomposition_file(const std::string& path, const TreeDecomposition& td, std::size_t vertex_count);

// "source host node" per host vertex (1-indexed vertices, node 0-indexed, -1 for canonical copies).
void write_host_map(std::ostream& out, const OneToManyEmbedding& e, const std::vector<std::size_t>& copy_node);
void write_host_map_file(const std::string& path, const OneToManyEmbedding& e,
                         const std::vector<std::size_t>& copy_node);
// Rebuilds clans from a host map; the first listed copy of each source is canonical.
OneToManyEmbedding read_host_map(std::istream& in, WeightedGraph host, std::size_t source_count);
OneToManyEmbedding read_host_map_file(const std::string& path, WeightedGraph host, std::size_t source_count);

// One value per line (vertex order) or "vertex,value" rows (1-indexed); a non-numeric first line is a header.
std::vector<double> read_measure(std::istream& in, std::size_t vertex_count);
std::vector<double> read_measure_file(const std::string& path, std::size_t vertex_count);

}  // namespace lowtw
