#include "lowtw/instances.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "lowtw/error.hpp"
#include "lowtw/planar.hpp"
#include "lowtw/random.hpp"

namespace lowtw {

WeightedGraph grid(std::size_t side, WeightMode mode, std::uint64_t seed) {
    require(side >= 2, ErrorKind::argument, "grid side must be at least 2");
    const std::size_t n = side * side;
    WeightedGraph g(n);
    auto rng = stream_rng(seed, 0);
    auto weight = [&] { return mode == WeightMode::unit ? 1.0 : 1.0 + 9.0 * unit_uniform(rng); };
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            auto v = static_cast<VertexId>(i * side + j);
            x[v] = static_cast<double>(j);
            y[v] = static_cast<double>(i);
            if (j + 1 < side) {
                g.add_edge(v, v + 1, weight());
            }
            if (i + 1 < side) {
                g.add_edge(v, static_cast<VertexId>(v + side), weight());
            }
        }
    }
    g.set_rotation(rotation_from_coordinates(g, x, y));
    return g;
}

WeightedGraph subdivide(const WeightedGraph& g, std::size_t k) {
    require(k >= 1, ErrorKind::argument, "subdivision factor must be at least 1");
    if (k == 1) {
        return g;
    }
    WeightedGraph out(g.vertex_count());
    // For each source edge: the piece at u and the piece at v.
    std::vector<std::pair<EdgeId, EdgeId>> ends(g.edge_count());
    std::vector<std::vector<EdgeId>> inner_rot;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (ed.structural) {
            EdgeId id = out.add_edge(ed.u, ed.v, ed.w, true);
            ends[e] = {id, id};
            continue;
        }
        VertexId prev = ed.u;
        EdgeId prev_edge = kNoEdge;
        for (std::size_t step = 0; step < k; ++step) {
            VertexId next = step + 1 == k ? ed.v : out.add_vertex();
            EdgeId id = out.add_edge(prev, next, ed.w);
            if (step == 0) {
                ends[e].first = id;
            } else {
                inner_rot.push_back({prev_edge, id});
            }
            if (step + 1 == k) {
                ends[e].second = id;
            }
            prev = next;
            prev_edge = id;
        }
    }
    if (g.has_rotation() && g.vertex_count() > 0) {
        RotationSystem rot(out.vertex_count());
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (EdgeId e : g.rotation()[v]) {
                rot[v].push_back(g.edge(e).u == v ? ends[e].first : ends[e].second);
            }
        }
        for (std::size_t i = 0; i < inner_rot.size(); ++i) {
            rot[g.vertex_count() + i] = inner_rot[i];
        }
        out.set_rotation(std::move(rot));
    }
    return out;
}

WeightedGraph star_attach(const WeightedGraph& g, VertexId host_vertex, std::size_t count) {
    g.check_vertex(host_vertex);
    WeightedGraph out = g;
    if (count == 0) {
        return out;
    }
    bool had_rotation = g.has_rotation();
    RotationSystem rot = g.rotation();
    out.clear_rotation();
    for (std::size_t i = 0; i < count; ++i) {
        VertexId p = out.add_vertex();
        EdgeId e = out.add_edge(host_vertex, p, 1.0);
        if (had_rotation) {
            rot[host_vertex].push_back(e);
            rot.push_back({e});
        }
    }
    if (had_rotation) {
        out.set_rotation(std::move(rot));
    }
    return out;
}

LowerBoundInstance lower_bound_instance(double eps, std::size_t n) {
    require(eps > 0 && eps < 0.5, ErrorKind::argument, "eps must lie in (0,1/2)");
    LowerBoundInstance lb;
    double cells = 1.0 / (42.0 * eps);
    lb.grid_side = static_cast<std::size_t>(std::ceil(cells - 1e-9)) + 1;
    lb.subdivision = 21;
    auto core = subdivide(grid(lb.grid_side), lb.subdivision);
    lb.core_vertices = core.vertex_count();
    require(n >= lb.core_vertices, ErrorKind::argument, "n is smaller than the subdivided grid");
    lb.pendant_vertices = n - lb.core_vertices;
    lb.graph = star_attach(core, 0, lb.pendant_vertices);
    return lb;
}

namespace {

struct DrawnGeodesicGrid {
    GeodesicGrid gg;
    std::vector<double> x;
    std::vector<double> y;
};

DrawnGeodesicGrid draw_geodesic_grid(std::size_t n) {
    require(n >= 1, ErrorKind::argument, "geodesic grid needs n >= 1");
    const std::size_t side = n + 1;
    auto id = [side](std::size_t i, std::size_t j) { return static_cast<VertexId>(i * side + j); };

    // Each path as a vertex sequence of the grid; row paths first, then columns.
    std::vector<std::vector<VertexId>> walks;
    for (std::size_t r = 0; r < side; ++r) {
        std::vector<VertexId> w;
        for (std::size_t i = 0; i <= r; ++i) w.push_back(id(i, 0));
        for (std::size_t j = 1; j < side; ++j) w.push_back(id(r, j));
        for (std::size_t i = r + 1; i < side; ++i) w.push_back(id(i, n));
        walks.push_back(std::move(w));
    }
    for (std::size_t c = 0; c < side; ++c) {
        std::vector<VertexId> w;
        for (std::size_t j = 0; j <= c; ++j) w.push_back(id(0, j));
        for (std::size_t i = 1; i < side; ++i) w.push_back(id(i, c));
        for (std::size_t j = c + 1; j < side; ++j) w.push_back(id(n, j));
        walks.push_back(std::move(w));
    }

    std::map<std::pair<VertexId, VertexId>, std::size_t> multiplicity;
    std::size_t max_mult = 1;
    for (const auto& w : walks) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            auto key = std::minmax(w[i], w[i + 1]);
            max_mult = std::max(max_mult, ++multiplicity[key]);
        }
    }

    DrawnGeodesicGrid out;
    auto& gg = out.gg;
    gg.n = n;
    gg.graph = WeightedGraph(side * side);
    out.x.resize(side * side);
    out.y.resize(side * side);
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            out.x[id(i, j)] = static_cast<double>(j);
            out.y[id(i, j)] = static_cast<double>(i);
        }
    }
    gg.s = id(0, 0);
    gg.t = id(n, n);
    gg.grid_vertex_map.resize(side * side);
    for (VertexId v = 0; v < side * side; ++v) {
        gg.grid_vertex_map[v] = v;
    }

    const double spread = 0.6 / static_cast<double>(max_mult);
    std::map<std::pair<VertexId, VertexId>, std::size_t> used;
    for (const auto& w : walks) {
        std::vector<EdgeId> path;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            VertexId p = w[i];
            VertexId q = w[i + 1];
            auto key = std::minmax(p, q);
            double total = static_cast<double>(multiplicity[key]);
            double slot = static_cast<double>(used[key]++) - (total - 1) / 2;
            VertexId a = key.first;
            VertexId b = key.second;
            double dx = out.x[b] - out.x[a];
            double dy = out.y[b] - out.y[a];
            VertexId mid = gg.graph.add_vertex();
            out.x.push_back((out.x[a] + out.x[b]) / 2 - dy * slot * spread);
            out.y.push_back((out.y[a] + out.y[b]) / 2 + dx * slot * spread);
            path.push_back(gg.graph.add_edge(p, mid, 1.0));
            path.push_back(gg.graph.add_edge(mid, q, 1.0));
        }
        gg.paths.push_back(std::move(path));
    }
    gg.graph.set_rotation(rotation_from_coordinates(gg.graph, out.x, out.y));
    return out;
}

// Incident edges of v in counterclockwise order, starting after the widest angular gap.
std::vector<EdgeId> wedge_order(const WeightedGraph& g, VertexId v, const std::vector<double>& x,
                                const std::vector<double>& y) {
    std::vector<std::pair<double, EdgeId>> order;
    for (const auto& a : g.arcs(v)) {
        order.emplace_back(std::atan2(y[a.to] - y[v], x[a.to] - x[v]), a.edge);
    }
    std::sort(order.begin(), order.end());
    std::size_t start = 0;
    double widest = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        double next = i + 1 < order.size() ? order[i + 1].first : order[0].first + 2 * M_PI;
        if (next - order[i].first > widest) {
            widest = next - order[i].first;
            start = (i + 1) % order.size();
        }
    }
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.push_back(order[(start + i) % order.size()].second);
    }
    return out;
}

}  // namespace

GeodesicGrid geodesic_grid(std::size_t n) { return draw_geodesic_grid(n).gg; }

FractalInstance fractal(std::size_t n, std::size_t k, std::size_t edge_budget) {
    require(k >= 1, ErrorKind::argument, "fractal level must be at least 1");
    auto drawn = draw_geodesic_grid(n);
    const auto& base = drawn.gg.graph;
    const std::size_t m = base.edge_count();
    double total = std::pow(static_cast<double>(m), static_cast<double>(k));
    if (total > static_cast<double>(edge_budget)) {
        fail(ErrorKind::resource, "fractal exceeds the edge budget");
    }
    const VertexId bs = drawn.gg.s;
    const VertexId bt = drawn.gg.t;
    auto s_wedge = wedge_order(base, bs, drawn.x, drawn.y);
    auto t_wedge = wedge_order(base, bt, drawn.x, drawn.y);

    FractalInstance fi;
    fi.level = 1;
    fi.n = n;
    fi.base_edge_count = m;
    fi.path_count = 2 * (n + 1);
    fi.path_hop_length = 4 * n;
    fi.s = bs;
    fi.t = bt;
    fi.graph = base;
    fi.copies.push_back({0, bs, bt});

    for (std::size_t level = 2; level <= k; ++level) {
        const auto& prev = fi.graph;
        WeightedGraph next(prev.vertex_count());
        RotationSystem rot(prev.vertex_count());
        // Replacement of edge e as seen from its lower and upper endpoint.
        std::vector<std::vector<EdgeId>> at_low(prev.edge_count());
        std::vector<std::vector<EdgeId>> at_high(prev.edge_count());
        std::vector<FractalCopy> copies;
        copies.reserve(prev.edge_count());
        std::vector<VertexId> image(base.vertex_count());
        for (EdgeId e = 0; e < prev.edge_count(); ++e) {
            VertexId a = std::min(prev.edge(e).u, prev.edge(e).v);
            VertexId b = std::max(prev.edge(e).u, prev.edge(e).v);
            for (VertexId x = 0; x < base.vertex_count(); ++x) {
                image[x] = x == bs ? a : x == bt ? b : next.add_vertex();
            }
            rot.resize(next.vertex_count());
            EdgeId first = static_cast<EdgeId>(next.edge_count());
            for (const auto& be : base.edges()) {
                next.add_edge(image[be.u], image[be.v], be.w);
            }
            for (VertexId x = 0; x < base.vertex_count(); ++x) {
                if (x == bs || x == bt) {
                    continue;
                }
                for (EdgeId be : base.rotation()[x]) {
                    rot[image[x]].push_back(first + be);
                }
            }
            for (EdgeId be : s_wedge) at_low[e].push_back(first + be);
            for (EdgeId be : t_wedge) at_high[e].push_back(first + be);
            copies.push_back({first, a, b});
        }
        for (VertexId v = 0; v < prev.vertex_count(); ++v) {
            for (EdgeId e : prev.rotation()[v]) {
                bool low = v == std::min(prev.edge(e).u, prev.edge(e).v);
                const auto& seq = low ? at_low[e] : at_high[e];
                rot[v].insert(rot[v].end(), seq.begin(), seq.end());
            }
        }
        next.set_rotation(std::move(rot));
        fi.graph = std::move(next);
        fi.copies = std::move(copies);
        fi.level = level;
    }
    return fi;
}

}  // namespace lowtw
