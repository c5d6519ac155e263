#include "lowtw/planar.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numeric>
#include <unordered_map>

#include "lowtw/error.hpp"

namespace lowtw {

namespace {

// Dart 2e runs u->v, dart 2e+1 runs v->u.
struct DartIndex {
    std::vector<std::size_t> pos;  // position of the dart's edge in rot(from)

    explicit DartIndex(const WeightedGraph& g) : pos(2 * g.edge_count(), 0) {
        const auto& rot = g.rotation();
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (std::size_t i = 0; i < rot[v].size(); ++i) {
                EdgeId e = rot[v][i];
                pos[2 * std::size_t{e} + (g.edge(e).u == v ? 0 : 1)] = i;
            }
        }
    }
};

Dart make_dart(const WeightedGraph& g, std::size_t d) {
    const Edge& e = g.edge(static_cast<EdgeId>(d / 2));
    return d % 2 == 0 ? Dart{static_cast<EdgeId>(d / 2), e.u, e.v} : Dart{static_cast<EdgeId>(d / 2), e.v, e.u};
}

std::size_t dart_of(const WeightedGraph& g, EdgeId e, VertexId from) {
    return 2 * std::size_t{e} + (g.edge(e).u == from ? 0 : 1);
}

void require_rotation(const WeightedGraph& g) {
    require(g.has_rotation(), ErrorKind::embedding, "graph has no rotation system");
}

}  // namespace

std::size_t FaceStructure::outer_face() const {
    std::size_t best = 0;
    for (std::size_t f = 1; f < faces.size(); ++f) {
        if (faces[f].size() > faces[best].size()) {
            best = f;
        }
    }
    return best;
}

FaceStructure trace_faces(const WeightedGraph& g) {
    require_rotation(g);
    DartIndex idx(g);
    const auto& rot = g.rotation();
    const std::size_t nd = 2 * g.edge_count();
    FaceStructure fs;
    fs.edge_faces.assign(g.edge_count(), {0, 0});
    std::vector<char> used(nd, 0);
    for (std::size_t start = 0; start < nd; ++start) {
        if (used[start]) {
            continue;
        }
        std::size_t face = fs.faces.size();
        fs.faces.emplace_back();
        std::size_t d = start;
        while (!used[d]) {
            used[d] = 1;
            Dart dart = make_dart(g, d);
            fs.faces[face].push_back(dart);
            fs.edge_faces[dart.edge][d % 2] = face;
            // Leave the head along the successor of this edge in rot(head).
            std::size_t back = d ^ 1;
            const auto& around = rot[dart.to];
            EdgeId next = around[(idx.pos[back] + 1) % around.size()];
            d = dart_of(g, next, dart.to);
        }
    }
    return fs;
}

bool is_planar_embedding(const WeightedGraph& g) {
    if (!g.has_rotation()) {
        return false;
    }
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](VertexId x) {
        while (uf[x] != x) {
            x = uf[x] = uf[uf[x]];
        }
        return x;
    };
    for (const auto& e : g.edges()) {
        uf[find(e.u)] = find(e.v);
    }
    long long components = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (find(v) == v) {
            // An isolated vertex bounds no traced face; count it as one.
            components += g.degree(v) == 0 ? 1 : 2;
        }
    }
    auto fs = trace_faces(g);
    long long euler = static_cast<long long>(n) - static_cast<long long>(g.edge_count()) +
                      static_cast<long long>(fs.faces.size());
    return euler == components;
}

WeightedGraph triangulate(const WeightedGraph& g, TriangulateOptions opts) {
    require_rotation(g);
    require(is_planar_embedding(g), ErrorKind::embedding, "rotation system is not a planar embedding");
    auto fs = trace_faces(g);
    const std::size_t skip = opts.keep_outer_face && !fs.faces.empty() ? fs.outer_face() : fs.faces.size();

    WeightedGraph out(g.vertex_count());
    for (const auto& e : g.edges()) {
        out.add_edge(e.u, e.v, e.w, e.structural);
    }
    std::vector<std::list<EdgeId>> rot(g.vertex_count());
    std::vector<std::unordered_map<EdgeId, std::list<EdgeId>::iterator>> where(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (EdgeId e : g.rotation()[v]) {
            where[v][e] = rot[v].insert(rot[v].end(), e);
        }
    }

    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
        if (f == skip || fs.faces[f].size() <= 3) {
            continue;
        }
        std::list<Dart> walk(fs.faces[f].begin(), fs.faces[f].end());
        auto cyc_next = [&](std::list<Dart>::iterator it) { return ++it == walk.end() ? walk.begin() : it; };
        auto cyc_prev = [&](std::list<Dart>::iterator it) { return it == walk.begin() ? std::prev(walk.end()) : --it; };
        // `cur` is the dart arriving at the ear tip; `nxt` leaves it.
        auto cur = walk.begin();
        std::size_t stalled = 0;
        while (walk.size() > 3) {
            auto nxt = cyc_next(cur);
            VertexId a = cur->from;
            VertexId c = nxt->to;
            if (a == c) {
                cur = nxt;
                require(++stalled <= walk.size(), ErrorKind::embedding, "face cannot be triangulated");
                continue;
            }
            stalled = 0;
            EdgeId chord = out.add_edge(a, c, 0, true);
            // At c the chord goes right after the arriving edge; at a right before the leaving one.
            where[c][chord] = rot[c].insert(std::next(where[c][nxt->edge]), chord);
            where[a][chord] = rot[a].insert(where[a][cur->edge], chord);
            auto pos = walk.erase(cur);
            pos = walk.erase(pos == walk.end() ? walk.begin() : pos);
            cur = walk.insert(pos, Dart{chord, a, c});
            cur = cyc_prev(cur);
        }
    }

    RotationSystem final_rot(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        final_rot[v].assign(rot[v].begin(), rot[v].end());
    }
    out.set_rotation(std::move(final_rot));
    return out;
}

RotationSystem rotation_from_coordinates(const WeightedGraph& g, std::span<const double> x,
                                         std::span<const double> y) {
    require(x.size() == g.vertex_count() && y.size() == g.vertex_count(), ErrorKind::argument,
            "coordinate arrays must cover every vertex");
    RotationSystem rot(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<std::pair<double, EdgeId>> order;
        for (const auto& a : g.arcs(v)) {
            order.emplace_back(std::atan2(y[a.to] - y[v], x[a.to] - x[v]), a.edge);
        }
        std::sort(order.begin(), order.end());
        for (const auto& [angle, e] : order) {
            rot[v].push_back(e);
        }
    }
    return rot;
}

ContractedGraph contract_annulus(const WeightedGraph& g, VertexId r, std::span<const Length> dist,
                                 const AnnulusSpec& spec) {
    g.check_vertex(r);
    const std::size_t n = g.vertex_count();
    require(dist.size() == n, ErrorKind::argument, "distance array size mismatch");
    enum : char { kDeleted, kCollapsed, kKept };
    std::vector<char> state(n, kDeleted);
    ContractedGraph out;
    out.from_source.assign(n, kNoVertex);
    out.to_source.push_back(r);
    for (VertexId v = 0; v < n; ++v) {
        Length d = dist[v];
        bool inside_outer = spec.outer_inclusive ? d <= spec.outer : d < spec.outer;
        if (v == r || d < spec.inner) {
            state[v] = kCollapsed;
            out.from_source[v] = 0;
        } else if (inside_outer && !is_infinite(d)) {
            state[v] = kKept;
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (state[v] == kKept) {
            out.from_source[v] = static_cast<VertexId>(out.to_source.size());
            out.to_source.push_back(v);
        }
    }

    WeightedGraph h(out.to_source.size());
    std::vector<EdgeId> image(g.edge_count(), kNoEdge);
    std::vector<EdgeId> root_edge(n, kNoEdge);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        char su = state[ed.u], sv = state[ed.v];
        if (su == kDeleted || sv == kDeleted || (su == kCollapsed && sv == kCollapsed)) {
            continue;
        }
        if (su == kKept && sv == kKept) {
            image[e] = h.add_edge(out.from_source[ed.u], out.from_source[ed.v], ed.w, ed.structural);
            continue;
        }
        VertexId v = su == kKept ? ed.u : ed.v;
        if (root_edge[v] == kNoEdge) {
            Length w = spec.root_weight == RootEdgeWeight::unit ? 1.0 : dist[v];
            root_edge[v] = h.add_edge(0, out.from_source[v], w);
            image[e] = root_edge[v];
        }
    }

    if (g.has_rotation() && n > 0) {
        // Contract the collapsed set edge by edge; each contraction splices
        // rot(b) into the super-vertex rotation in place of the contracted edge.
        std::list<EdgeId> super(g.rotation()[r].begin(), g.rotation()[r].end());
        std::unordered_map<EdgeId, std::list<EdgeId>::iterator> pos;
        for (auto it = super.begin(); it != super.end(); ++it) {
            pos[*it] = it;
        }
        std::vector<char> merged(n, 0);
        merged[r] = 1;
        std::vector<std::pair<VertexId, EdgeId>> queue;
        auto discover = [&](VertexId x) {
            for (const auto& a : g.arcs(x)) {
                if (state[a.to] == kCollapsed && !merged[a.to]) {
                    merged[a.to] = 1;
                    queue.emplace_back(a.to, a.edge);
                }
            }
        };
        discover(r);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            auto [b, e] = queue[qi];
            auto it = pos.at(e);
            const auto& rb = g.rotation()[b];
            std::size_t at = std::find(rb.begin(), rb.end(), e) - rb.begin();
            auto insert_at = std::next(it);
            for (std::size_t k = 1; k < rb.size(); ++k) {
                EdgeId f = rb[(at + k) % rb.size()];
                pos[f] = super.insert(insert_at, f);
            }
            super.erase(it);
            discover(b);
        }
        RotationSystem rot(h.vertex_count());
        for (EdgeId e : super) {
            if (image[e] != kNoEdge) {
                const Edge& ed = g.edge(e);
                bool loop = state[ed.u] == kCollapsed && state[ed.v] == kCollapsed;
                if (!loop) {
                    rot[0].push_back(image[e]);
                }
            }
        }
        for (VertexId v = 0; v < n; ++v) {
            if (state[v] != kKept) {
                continue;
            }
            auto& list = rot[out.from_source[v]];
            for (EdgeId e : g.rotation()[v]) {
                if (image[e] != kNoEdge) {
                    list.push_back(image[e]);
                }
            }
        }
        h.set_rotation(std::move(rot));
    }
    out.graph = std::move(h);
    return out;
}

}  // namespace lowtw
