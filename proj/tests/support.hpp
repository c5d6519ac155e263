#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/planar.hpp"
#include "lowtw/random.hpp"

namespace testing {

using namespace lowtw;

// Uniform random recursive tree on a shuffled labelling, weights in [1, 10).
inline WeightedGraph random_tree(std::size_t n, std::mt19937_64& rng, bool unit = false) {
    std::vector<VertexId> label(n);
    std::iota(label.begin(), label.end(), 0);
    std::shuffle(label.begin(), label.end(), rng);
    WeightedGraph g(n);
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        double w = unit ? 1.0 : 1.0 + 9.0 * unit_uniform(rng);
        g.add_edge(label[i], label[pick(rng)], w);
    }
    return g;
}

inline WeightedGraph path_tree(std::size_t n) {
    WeightedGraph g(n);
    for (VertexId v = 1; v < n; ++v) {
        g.add_edge(v - 1, v, 1 + (v % 3));
    }
    return g;
}

inline WeightedGraph star_tree(std::size_t n) {
    WeightedGraph g(n);
    for (VertexId v = 1; v < n; ++v) {
        g.add_edge(0, v, 1 + (v % 5));
    }
    return g;
}

// Spine of half the vertices, the rest hung off random spine vertices.
inline WeightedGraph caterpillar(std::size_t n, std::mt19937_64& rng) {
    std::size_t spine = std::max<std::size_t>(1, n / 2);
    WeightedGraph g(n);
    for (VertexId v = 1; v < spine; ++v) {
        g.add_edge(v - 1, v, 1);
    }
    std::uniform_int_distribution<std::size_t> pick(0, spine - 1);
    for (std::size_t v = spine; v < n; ++v) {
        g.add_edge(static_cast<VertexId>(pick(rng)), static_cast<VertexId>(v), 1 + 4 * unit_uniform(rng));
    }
    return g;
}

// w x h unit grid, vertex (row i, column j) = i * w + j, planar rotation.
inline WeightedGraph rect_grid(std::size_t w, std::size_t h) {
    WeightedGraph g(w * h);
    std::vector<double> x(w * h), y(w * h);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            auto v = static_cast<VertexId>(i * w + j);
            x[v] = static_cast<double>(j);
            y[v] = static_cast<double>(i);
            if (j + 1 < w) {
                g.add_edge(v, v + 1, 1);
            }
            if (i + 1 < h) {
                g.add_edge(v, static_cast<VertexId>(v + w), 1);
            }
        }
    }
    g.set_rotation(rotation_from_coordinates(g, x, y));
    return g;
}

inline std::vector<double> random_measure(std::size_t n, std::uint64_t seed) {
    auto rng = stream_rng(seed, 99);
    std::vector<double> mu(n);
    for (auto& m : mu) {
        m = unit_uniform(rng);
    }
    return mu;
}

inline std::vector<VertexId> all_vertices(std::size_t n) {
    std::vector<VertexId> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace testing
