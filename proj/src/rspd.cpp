#include "lowtw/rspd.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "lowtw/error.hpp"
#include "lowtw/planar.hpp"
#include "lowtw/random.hpp"

namespace lowtw {

void Rspd::index_tree() {
    const std::size_t n = sp_tree.vertex_count();
    tin_.assign(n, 0);
    tout_.assign(n, 0);
    if (n == 0) {
        return;
    }
    std::size_t clock = 0;
    std::vector<std::pair<VertexId, std::size_t>> stack{{sp_tree.root(), 0}};
    tin_[sp_tree.root()] = clock++;
    while (!stack.empty()) {
        auto& [v, i] = stack.back();
        auto kids = sp_tree.children(v);
        if (i < kids.size()) {
            VertexId c = kids[i++];
            tin_[c] = clock++;
            stack.emplace_back(c, 0);
        } else {
            tout_[v] = clock++;
            stack.pop_back();
        }
    }
}

bool Rspd::on_boundary(std::size_t node, VertexId v) const {
    const auto& b = nodes[node].boundary;
    return std::any_of(b.begin(), b.end(), [&](VertexId x) { return on_path(x, v); });
}

bool Rspd::on_boundary_plus(std::size_t node, VertexId v) const {
    const auto& b = nodes[node].boundary_plus;
    return std::any_of(b.begin(), b.end(), [&](VertexId x) { return on_path(x, v); });
}

std::size_t Rspd::height() const {
    std::size_t h = 0;
    for (const auto& nd : nodes) {
        h = std::max(h, nd.depth);
    }
    return h;
}

std::size_t Rspd::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const RspdNode& x) { return x.is_leaf(); }));
}

namespace {

class RspdBuilder {
public:
    RspdBuilder(const WeightedGraph& g, Rspd& phi)
        : phi_(phi), tri_(triangulate(g, {false})), faces_(trace_faces(tri_)) {
        const std::size_t n = g.vertex_count();
        tree_edge_.assign(tri_.edge_count(), 0);
        auto sp = dijkstra(g, phi_.root_vertex);
        for (VertexId v = 0; v < n; ++v) {
            if (v != phi_.root_vertex) {
                tree_edge_[sp.pred_edge[v]] = 1;
            }
        }
        phi_.sp_tree = sp.tree();
        phi_.index_tree();
        const std::size_t nf = faces_.faces.size();
        face_stamp_.assign(nf, 0);
        face_tin_.assign(nf, 0);
        face_tout_.assign(nf, 0);
        face_weight_.assign(nf, 0);
        face_parent_edge_.assign(nf, kNoEdge);
        vertex_stamp_.assign(n, 0);
        path_stamp_.assign(n, 0);
        own_stamp_.assign(n, 0);
    }

    void run() {
        std::vector<std::size_t> all(faces_.faces.size());
        for (std::size_t f = 0; f < all.size(); ++f) {
            all[f] = f;
        }
        build(std::move(all), {}, kNoNode, 0);
    }

private:
    std::vector<VertexId> maximal(std::vector<VertexId> pts) const {
        std::sort(pts.begin(), pts.end(), [&](VertexId a, VertexId b) { return phi_.tin(a) < phi_.tin(b); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::vector<VertexId> out;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i + 1 == pts.size() || !phi_.on_path(pts[i + 1], pts[i])) {
                out.push_back(pts[i]);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t maximal_count(std::vector<VertexId>& pts) const {
        std::sort(pts.begin(), pts.end(), [&](VertexId a, VertexId b) { return phi_.tin(a) < phi_.tin(b); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::size_t count = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i + 1 == pts.size() || !phi_.on_path(pts[i + 1], pts[i])) {
                ++count;
            }
        }
        return count;
    }

    std::size_t other_face(EdgeId e, std::size_t f) const {
        const auto& ef = faces_.edge_faces[e];
        return ef[0] == f ? ef[1] : ef[0];
    }

    std::size_t build(std::vector<std::size_t> faces, std::vector<EdgeId> cut, std::size_t parent, std::size_t depth) {
        const std::size_t id = phi_.nodes.size();
        phi_.nodes.emplace_back();
        {
            auto& node = phi_.nodes[id];
            node.parent = parent;
            node.depth = depth;
            std::vector<VertexId> ends;
            for (EdgeId e : cut) {
                ends.push_back(tri_.edge(e).u);
                ends.push_back(tri_.edge(e).v);
            }
            node.boundary = maximal(std::move(ends));
            node.boundary_plus = node.boundary;

            ++stamp_;
            for (std::size_t f : faces) {
                for (const auto& d : faces_.faces[f]) {
                    if (vertex_stamp_[d.from] != stamp_) {
                        vertex_stamp_[d.from] = stamp_;
                        node.piece.push_back(d.from);
                    }
                }
            }
            for (VertexId b : node.boundary) {
                for (VertexId x = b; path_stamp_[x] != stamp_; x = phi_.sp_tree.parent(x)) {
                    path_stamp_[x] = stamp_;
                    if (vertex_stamp_[x] != stamp_) {
                        vertex_stamp_[x] = stamp_;
                        node.piece.push_back(x);
                    }
                    if (x == phi_.root_vertex) {
                        break;
                    }
                }
            }
            std::sort(node.piece.begin(), node.piece.end());
            for (VertexId v : node.piece) {
                if (path_stamp_[v] != stamp_) {
                    node.internal.push_back(v);
                }
            }
            if (node.internal.size() <= phi_.eta || faces.size() <= 1) {
                return id;
            }
        }

        // Dual spanning tree restricted to this piece.
        const std::size_t fs = ++face_stamp_counter_;
        for (std::size_t f : faces) {
            face_stamp_[f] = fs;
        }
        std::vector<std::size_t> order;
        order.reserve(faces.size());
        {
            std::size_t clock = 0;
            std::vector<std::pair<std::size_t, std::size_t>> stack{{faces[0], 0}};
            face_parent_edge_[faces[0]] = kNoEdge;
            face_tin_[faces[0]] = clock++;
            order.push_back(faces[0]);
            while (!stack.empty()) {
                auto& [f, i] = stack.back();
                const auto& walk = faces_.faces[f];
                if (i < walk.size()) {
                    EdgeId e = walk[i++].edge;
                    if (tree_edge_[e] || e == face_parent_edge_[f]) {
                        continue;
                    }
                    std::size_t h = other_face(e, f);
                    if (h == f || face_stamp_[h] != fs) {
                        continue;
                    }
                    face_parent_edge_[h] = e;
                    face_tin_[h] = clock++;
                    order.push_back(h);
                    stack.emplace_back(h, 0);
                } else {
                    face_tout_[f] = clock++;
                    stack.pop_back();
                }
            }
        }
        require(order.size() == faces.size(), ErrorKind::embedding, "piece is not connected in the dual tree");

        // Each parent-internal vertex is owned by its lowest-index face.
        const auto& internal = phi_.nodes[id].internal;
        ++stamp_;
        for (VertexId v : internal) {
            path_stamp_[v] = stamp_;
        }
        std::vector<std::size_t> sorted_faces = faces;
        std::sort(sorted_faces.begin(), sorted_faces.end());
        for (std::size_t f : sorted_faces) {
            face_weight_[f] = 0;
            for (const auto& d : faces_.faces[f]) {
                if (path_stamp_[d.from] == stamp_ && own_stamp_[d.from] != stamp_) {
                    own_stamp_[d.from] = stamp_;
                    ++face_weight_[f];
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            EdgeId pe = face_parent_edge_[*it];
            if (pe != kNoEdge) {
                face_weight_[other_face(pe, *it)] += face_weight_[*it];
            }
        }
        const std::size_t total = face_weight_[faces[0]];

        std::vector<std::size_t> cut_tin(cut.size());
        for (std::size_t i = 0; i < cut.size(); ++i) {
            const auto& ef = faces_.edge_faces[cut[i]];
            std::size_t inside = face_stamp_[ef[0]] == fs ? ef[0] : ef[1];
            cut_tin[i] = face_tin_[inside];
        }

        // Feasible (both sides within eta) first, then balance, then smaller edge id.
        using Key = std::tuple<int, std::size_t, std::size_t, EdgeId>;
        Key best{2, 0, 0, kNoEdge};
        std::size_t best_face = kNoNode;
        std::vector<VertexId> in, out;
        for (std::size_t k = 1; k < order.size(); ++k) {
            std::size_t f = order[k];
            EdgeId e = face_parent_edge_[f];
            in.clear();
            out.clear();
            for (std::size_t i = 0; i < cut.size(); ++i) {
                auto& side = (cut_tin[i] >= face_tin_[f] && cut_tin[i] <= face_tout_[f]) ? in : out;
                side.push_back(tri_.edge(cut[i]).u);
                side.push_back(tri_.edge(cut[i]).v);
            }
            for (auto* side : {&in, &out}) {
                side->push_back(tri_.edge(e).u);
                side->push_back(tri_.edge(e).v);
            }
            std::size_t worst = std::max(maximal_count(in), maximal_count(out));
            std::size_t sub = face_weight_[f];
            std::size_t balance = std::max(sub, total - sub);
            Key key = worst <= phi_.eta ? Key{0, 0, balance, e} : Key{1, worst, balance, e};
            if (best_face == kNoNode || key < best) {
                best = key;
                best_face = f;
            }
        }

        EdgeId split = face_parent_edge_[best_face];
        std::vector<std::size_t> inner_faces, outer_faces;
        for (std::size_t f : faces) {
            bool inside = face_tin_[f] >= face_tin_[best_face] && face_tin_[f] <= face_tout_[best_face];
            (inside ? inner_faces : outer_faces).push_back(f);
        }
        std::vector<EdgeId> inner_cut{split}, outer_cut{split};
        for (std::size_t i = 0; i < cut.size(); ++i) {
            bool inside = cut_tin[i] >= face_tin_[best_face] && cut_tin[i] <= face_tout_[best_face];
            (inside ? inner_cut : outer_cut).push_back(cut[i]);
        }
        {
            auto& node = phi_.nodes[id];
            VertexId a = tri_.edge(split).u, b = tri_.edge(split).v;
            node.separator = {std::min(a, b), std::max(a, b)};
            std::vector<VertexId> pts = node.boundary;
            pts.push_back(a);
            pts.push_back(b);
            node.boundary_plus = maximal(std::move(pts));
        }
        faces.clear();
        faces.shrink_to_fit();
        std::size_t left = build(std::move(inner_faces), std::move(inner_cut), id, depth + 1);
        phi_.nodes[id].children[0] = left;
        std::size_t right = build(std::move(outer_faces), std::move(outer_cut), id, depth + 1);
        phi_.nodes[id].children[1] = right;
        return id;
    }

    Rspd& phi_;
    WeightedGraph tri_;
    FaceStructure faces_;
    std::vector<char> tree_edge_;
    std::vector<std::size_t> face_stamp_;
    std::size_t face_stamp_counter_ = 0;
    std::vector<std::size_t> face_tin_;
    std::vector<std::size_t> face_tout_;
    std::vector<std::size_t> face_weight_;
    std::vector<EdgeId> face_parent_edge_;
    std::vector<std::size_t> vertex_stamp_;
    std::vector<std::size_t> path_stamp_;
    std::vector<std::size_t> own_stamp_;
    std::size_t stamp_ = 0;
};

void note(RspdReport& rep, std::string msg) {
    if (rep.issues.size() < 32) {
        rep.issues.push_back(std::move(msg));
    }
}

bool contains(const std::vector<VertexId>& sorted, VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

Rspd build_rspd(const WeightedGraph& g, VertexId r, std::size_t eta) {
    g.check_vertex(r);
    require(eta >= kMinEta, ErrorKind::argument, "eta must be at least 3");
    require(g.has_rotation(), ErrorKind::embedding, "graph has no rotation system");
    require(g.is_connected(), ErrorKind::argument, "graph must be connected");
    Rspd phi;
    phi.root_vertex = r;
    phi.eta = eta;
    const std::size_t n = g.vertex_count();
    if (n <= eta) {
        phi.sp_tree = dijkstra(g, r).tree();
        phi.index_tree();
        RspdNode leaf;
        for (VertexId v = 0; v < n; ++v) {
            leaf.piece.push_back(v);
            leaf.internal.push_back(v);
        }
        phi.nodes.push_back(std::move(leaf));
        return phi;
    }
    RspdBuilder(g, phi).run();
    return phi;
}

double rspd_height_bound(std::size_t n) { return 4.0 * std::log2(std::max<double>(2.0, static_cast<double>(n))) + 8.0; }

RspdReport validate_rspd(const WeightedGraph& g, const Rspd& phi) {
    RspdReport rep;
    const std::size_t n = g.vertex_count();
    rep.height = phi.height();
    rep.node_count = phi.nodes.size();
    if (phi.nodes.empty()) {
        rep.p1 = rep.p2b = false;
        note(rep, "decomposition has no nodes");
        return rep;
    }
    if (static_cast<double>(rep.height) > rspd_height_bound(n) || rep.node_count > std::max<std::size_t>(1, 4 * n)) {
        rep.p1 = false;
        note(rep, "height " + std::to_string(rep.height) + " or node count " + std::to_string(rep.node_count) +
                      " exceeds the bound");
    }

    // The stored tree must be a shortest-path tree of g.
    auto dist = dijkstra_distances(g, phi.root_vertex);
    const auto& depth = phi.sp_tree.depths();
    for (VertexId v = 0; v < n; ++v) {
        if (std::abs(depth[v] - dist[v]) > kLengthTolerance) {
            rep.shortest_boundaries = false;
            note(rep, "tree path to " + std::to_string(v) + " is not shortest");
        }
        if (v == phi.root_vertex) {
            continue;
        }
        VertexId p = phi.sp_tree.parent(v);
        bool edge_ok = std::any_of(g.arcs(v).begin(), g.arcs(v).end(), [&](const Arc& a) {
            return a.to == p && !g.edge(a.edge).structural &&
                   std::abs(g.edge(a.edge).w - phi.sp_tree.parent_weight(v)) <= kLengthTolerance;
        });
        if (!edge_ok) {
            rep.shortest_boundaries = false;
            note(rep, "tree edge above " + std::to_string(v) + " is not a graph edge");
        }
    }

    std::vector<char> in_piece(n, 0), blocked(n, 0), seen(n, 0);
    for (std::size_t id = 0; id < phi.nodes.size(); ++id) {
        const auto& node = phi.nodes[id];
        rep.max_boundary = std::max(rep.max_boundary, node.boundary.size());
        if (node.boundary.size() > phi.eta) {
            rep.p2a = false;
            note(rep, "node " + std::to_string(id) + " has " + std::to_string(node.boundary.size()) + " boundary paths");
        }
        // Internal vertices are exactly the piece minus the boundary paths.
        std::vector<VertexId> expect;
        for (VertexId v : node.piece) {
            if (!phi.on_boundary(id, v)) {
                expect.push_back(v);
            }
        }
        if (expect != node.internal) {
            rep.p2b = false;
            note(rep, "node " + std::to_string(id) + " internal set is inconsistent");
        }
        if (node.is_leaf()) {
            rep.max_leaf_internal = std::max(rep.max_leaf_internal, node.internal.size());
            if (node.internal.size() > phi.eta) {
                rep.p2b = false;
                note(rep, "leaf " + std::to_string(id) + " has " + std::to_string(node.internal.size()) +
                              " internal vertices");
            }
        } else {
            const auto& a = phi.nodes[node.children[0]];
            const auto& b = phi.nodes[node.children[1]];
            std::vector<VertexId> uni, both;
            std::set_union(a.piece.begin(), a.piece.end(), b.piece.begin(), b.piece.end(), std::back_inserter(uni));
            std::set_intersection(a.piece.begin(), a.piece.end(), b.piece.begin(), b.piece.end(),
                                  std::back_inserter(both));
            if (uni != node.piece) {
                rep.p2b = false;
                note(rep, "node " + std::to_string(id) + " is not the union of its children");
            }
            for (VertexId v : both) {
                if (!phi.on_boundary(node.children[0], v) || !phi.on_boundary(node.children[1], v)) {
                    rep.p2b = false;
                    note(rep, "children of node " + std::to_string(id) + " share non-boundary vertex " +
                                  std::to_string(v));
                    break;
                }
            }
        }
        if (id == 0) {
            if (node.piece.size() != n) {
                rep.p2b = false;
                note(rep, "root piece is not the whole graph");
            }
            continue;
        }
        // P2c: search from internal vertices without crossing the boundary paths.
        for (VertexId v : node.piece) {
            in_piece[v] = 1;
            blocked[v] = phi.on_boundary(id, v) ? 1 : 0;
        }
        std::vector<VertexId> stack(node.internal.begin(), node.internal.end());
        std::vector<VertexId> touched = stack;
        for (VertexId v : stack) {
            seen[v] = 1;
        }
        bool escaped = false;
        while (!stack.empty() && !escaped) {
            VertexId x = stack.back();
            stack.pop_back();
            for (const auto& arc : g.arcs(x)) {
                if (g.edge(arc.edge).structural || seen[arc.to] || blocked[arc.to]) {
                    continue;
                }
                if (!in_piece[arc.to]) {
                    escaped = true;
                    break;
                }
                seen[arc.to] = 1;
                touched.push_back(arc.to);
                stack.push_back(arc.to);
            }
        }
        if (escaped) {
            rep.p2c = false;
            note(rep, "node " + std::to_string(id) + " leaks past its boundary paths");
        }
        for (VertexId v : touched) {
            seen[v] = 0;
        }
        for (VertexId v : node.piece) {
            in_piece[v] = 0;
            blocked[v] = 0;
        }
    }

    // Leaves cover every edge.
    std::vector<std::vector<std::size_t>> leaves_of(n);
    for (std::size_t id = 0; id < phi.nodes.size(); ++id) {
        if (phi.nodes[id].is_leaf()) {
            for (VertexId v : phi.nodes[id].piece) {
                leaves_of[v].push_back(id);
            }
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (leaves_of[v].empty()) {
            rep.p3 = false;
            note(rep, "vertex " + std::to_string(v) + " is in no leaf");
        }
    }
    for (const auto& e : g.edges()) {
        if (e.structural) {
            continue;
        }
        const auto& lu = leaves_of[e.u];
        bool covered = std::any_of(lu.begin(), lu.end(), [&](std::size_t id) { return contains(phi.nodes[id].piece, e.v); });
        if (!covered) {
            rep.p3 = false;
            note(rep, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is in no leaf");
        }
    }
    return rep;
}

std::vector<std::size_t> rspd_path_nodes(const Rspd& phi, std::size_t alpha, std::size_t beta) {
    require(alpha < phi.nodes.size() && beta < phi.nodes.size(), ErrorKind::argument, "node index out of range");
    std::vector<std::size_t> up, down;
    while (phi.nodes[alpha].depth > phi.nodes[beta].depth) {
        up.push_back(alpha);
        alpha = phi.nodes[alpha].parent;
    }
    while (phi.nodes[beta].depth > phi.nodes[alpha].depth) {
        down.push_back(beta);
        beta = phi.nodes[beta].parent;
    }
    while (alpha != beta) {
        up.push_back(alpha);
        down.push_back(beta);
        alpha = phi.nodes[alpha].parent;
        beta = phi.nodes[beta].parent;
    }
    up.push_back(alpha);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

std::vector<std::size_t> home_leaves(const Rspd& phi) {
    const std::size_t n = phi.sp_tree.vertex_count();
    std::vector<std::size_t> home(n, kNoNode);
    std::vector<char> inside(n, 0);
    for (std::size_t id = 0; id < phi.nodes.size(); ++id) {
        if (!phi.nodes[id].is_leaf()) {
            continue;
        }
        for (VertexId v : phi.nodes[id].internal) {
            home[v] = id;
            inside[v] = 1;
        }
    }
    for (std::size_t id = 0; id < phi.nodes.size(); ++id) {
        if (!phi.nodes[id].is_leaf()) {
            continue;
        }
        for (VertexId v : phi.nodes[id].piece) {
            if (!inside[v] && home[v] == kNoNode) {
                home[v] = id;
            }
        }
    }
    return home;
}

std::size_t home_leaf(const Rspd& phi, VertexId v) {
    require(v < phi.sp_tree.vertex_count(), ErrorKind::argument, "vertex id out of range");
    return home_leaves(phi)[v];
}

SeparationReport check_separation(const WeightedGraph& g, const Rspd& phi, std::size_t pairs, std::uint64_t seed) {
    SeparationReport rep;
    const std::size_t n = g.vertex_count();
    if (n < 2) {
        return rep;
    }
    auto home = home_leaves(phi);
    auto rng = stream_rng(seed, 0);
    std::size_t attempts = 0;
    while (rep.pairs_checked < pairs && attempts < 50 * pairs) {
        ++attempts;
        auto u = static_cast<VertexId>(rng() % n);
        auto v = static_cast<VertexId>(rng() % n);
        if (home[u] == home[v]) {
            continue;
        }
        ++rep.pairs_checked;
        auto sp = dijkstra(g, u);
        std::vector<VertexId> path{v};
        for (VertexId x = v; x != u; x = sp.pred[x]) {
            if (g.edge(sp.pred_edge[x]).structural) {
                ++rep.structural_edges_on_paths;
            }
            path.push_back(sp.pred[x]);
        }
        for (std::size_t lambda : rspd_path_nodes(phi, home[u], home[v])) {
            ++rep.node_checks;
            bool hit = std::any_of(path.begin(), path.end(), [&](VertexId x) { return phi.on_boundary_plus(lambda, x); });
            if (!hit) {
                ++rep.violations;
            }
        }
    }
    return rep;
}

}  // namespace lowtw
