#include "lowtw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "lowtw/error.hpp"

namespace lowtw {

namespace {

constexpr std::size_t kMaxIssues = 32;

void note(TreeDecompositionReport& rep, std::string msg) {
    if (rep.issues.size() < kMaxIssues) {
        rep.issues.push_back(std::move(msg));
    }
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t vertex_count) : adjacency_(vertex_count) {}

VertexId WeightedGraph::add_vertex() {
    adjacency_.emplace_back();
    if (!rotation_.empty()) {
        rotation_.emplace_back();
    }
    return static_cast<VertexId>(adjacency_.size() - 1);
}

EdgeId WeightedGraph::add_edge(VertexId u, VertexId v, Length w, bool structural) {
    check_vertex(u);
    check_vertex(v);
    require(u != v, ErrorKind::argument, "self-loops are not allowed");
    require(w >= 0 && !std::isnan(w), ErrorKind::argument, "edge weights must be nonnegative");
    auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v, w, structural});
    adjacency_[u].push_back({v, id});
    adjacency_[v].push_back({u, id});
    // A new edge invalidates any rotation system; callers re-install one.
    rotation_.clear();
    return id;
}

void WeightedGraph::set_rotation(RotationSystem rotation) {
    require(rotation.size() == vertex_count(), ErrorKind::embedding, "rotation system size mismatch");
    for (VertexId v = 0; v < vertex_count(); ++v) {
        const auto& order = rotation[v];
        require(order.size() == adjacency_[v].size(), ErrorKind::embedding,
                "rotation system does not list every incident edge exactly once");
        std::vector<EdgeId> listed(order.begin(), order.end());
        std::sort(listed.begin(), listed.end());
        std::vector<EdgeId> incident;
        incident.reserve(adjacency_[v].size());
        for (const auto& a : adjacency_[v]) {
            incident.push_back(a.edge);
        }
        std::sort(incident.begin(), incident.end());
        require(listed == incident, ErrorKind::embedding,
                "rotation system does not list every incident edge exactly once");
    }
    rotation_ = std::move(rotation);
}

void WeightedGraph::check_vertex(VertexId v) const {
    if (v >= vertex_count()) {
        fail(ErrorKind::argument, "vertex id " + std::to_string(v) + " out of range");
    }
}

bool WeightedGraph::is_connected() const {
    if (vertex_count() == 0) {
        return true;
    }
    std::vector<char> seen(vertex_count(), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (const auto& a : adjacency_[x]) {
            if (!seen[a.to] && !edges_[a.edge].structural) {
                seen[a.to] = 1;
                ++count;
                stack.push_back(a.to);
            }
        }
    }
    return count == vertex_count();
}

WeightedGraph WeightedGraph::deduplicated() const {
    std::map<std::pair<VertexId, VertexId>, EdgeId> best;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        auto key = std::minmax(ed.u, ed.v);
        auto [it, inserted] = best.emplace(key, e);
        if (!inserted) {
            const auto& cur = edges_[it->second];
            // Metric edges beat structural ones; then lighter wins.
            bool better = (cur.structural && !ed.structural) ||
                          (cur.structural == ed.structural && ed.w < cur.w);
            if (better) {
                it->second = e;
            }
        }
    }
    std::vector<EdgeId> remap(edges_.size(), kNoEdge);
    std::vector<char> keep(edges_.size(), 0);
    for (const auto& [key, e] : best) {
        keep[e] = 1;
    }
    WeightedGraph out(vertex_count());
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        if (keep[e]) {
            remap[e] = out.add_edge(edges_[e].u, edges_[e].v, edges_[e].w, edges_[e].structural);
        }
    }
    if (!rotation_.empty()) {
        RotationSystem rot(vertex_count());
        for (VertexId v = 0; v < vertex_count(); ++v) {
            for (EdgeId e : rotation_[v]) {
                if (keep[e]) {
                    rot[v].push_back(remap[e]);
                }
            }
        }
        out.set_rotation(std::move(rot));
    }
    return out;
}

RootedTree::RootedTree(VertexId root, std::vector<VertexId> parent, std::vector<Length> parent_weight)
    : root_(root), parent_(std::move(parent)), parent_weight_(std::move(parent_weight)) {
    const std::size_t n = parent_.size();
    require(parent_weight_.size() == n, ErrorKind::argument, "parent weight size mismatch");
    require(root_ < n, ErrorKind::argument, "tree root out of range");
    require(parent_[root_] == kNoVertex, ErrorKind::argument, "tree root must not have a parent");
    std::vector<std::size_t> counts(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        if (v == root_) {
            continue;
        }
        require(parent_[v] < n, ErrorKind::argument, "every non-root vertex needs a valid parent");
        require(parent_weight_[v] >= 0, ErrorKind::argument, "tree edge weights must be nonnegative");
        ++counts[parent_[v] + 1];
    }
    std::partial_sum(counts.begin(), counts.end(), counts.begin());
    child_begin_ = counts;
    child_list_.assign(n == 0 ? 0 : n - 1, 0);
    std::vector<std::size_t> fill(child_begin_.begin(), child_begin_.end() - 1);
    for (VertexId v = 0; v < n; ++v) {
        if (v != root_) {
            child_list_[fill[parent_[v]]++] = v;
        }
    }
    // Children come out in ascending order by construction.
    preorder_.reserve(n);
    depth_.assign(n, 0);
    std::vector<VertexId> stack{root_};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        preorder_.push_back(x);
        auto kids = children(x);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
            depth_[*it] = depth_[x] + parent_weight_[*it];
            stack.push_back(*it);
        }
    }
    require(preorder_.size() == n, ErrorKind::argument, "parent links must form a tree reaching every vertex");
}

std::span<const VertexId> RootedTree::children(VertexId v) const {
    return {child_list_.data() + child_begin_[v], child_begin_[v + 1] - child_begin_[v]};
}

RootedTree RootedTree::from_tree_graph(const WeightedGraph& g, VertexId root) {
    g.check_vertex(root);
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> parent(n, kNoVertex);
    std::vector<Length> weight(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{root};
    seen[root] = 1;
    std::size_t metric_edges = 0;
    for (const auto& e : g.edges()) {
        metric_edges += e.structural ? 0 : 1;
    }
    require(metric_edges + 1 == n, ErrorKind::argument, "graph is not a tree");
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (const auto& a : g.arcs(x)) {
            if (g.edge(a.edge).structural || seen[a.to]) {
                continue;
            }
            seen[a.to] = 1;
            parent[a.to] = x;
            weight[a.to] = g.edge(a.edge).w;
            stack.push_back(a.to);
        }
    }
    return RootedTree(root, std::move(parent), std::move(weight));
}

WeightedGraph RootedTree::to_graph() const {
    WeightedGraph g(vertex_count());
    for (VertexId v : preorder_) {
        if (v != root_) {
            g.add_edge(parent_[v], v, parent_weight_[v]);
        }
    }
    return g;
}

RootedTree ShortestPaths::tree() const {
    std::vector<Length> weight(dist.size(), 0);
    for (VertexId v = 0; v < dist.size(); ++v) {
        if (is_infinite(dist[v])) {
            fail(ErrorKind::domain, "vertex " + std::to_string(v) + " is unreachable from the source");
        }
        if (v != source) {
            weight[v] = dist[v] - dist[pred[v]];
        }
    }
    return RootedTree(source, pred, std::move(weight));
}

namespace {

using HeapItem = std::pair<Length, VertexId>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

void run_dijkstra(const WeightedGraph& g, MinHeap& heap, std::vector<Length>& dist,
                  std::vector<VertexId>* pred, std::vector<EdgeId>* pred_edge) {
    std::vector<char> settled(g.vertex_count(), 0);
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (settled[x] || d > dist[x]) {
            continue;
        }
        settled[x] = 1;
        for (const auto& a : g.arcs(x)) {
            const Edge& e = g.edge(a.edge);
            if (e.structural || settled[a.to]) {
                continue;
            }
            Length nd = d + e.w;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                if (pred) {
                    (*pred)[a.to] = x;
                    (*pred_edge)[a.to] = a.edge;
                }
                heap.push({nd, a.to});
            } else if (pred && nd == dist[a.to] && x < (*pred)[a.to]) {
                (*pred)[a.to] = x;
                (*pred_edge)[a.to] = a.edge;
            }
        }
    }
}

}  // namespace

ShortestPaths dijkstra(const WeightedGraph& g, VertexId s) {
    g.check_vertex(s);
    ShortestPaths sp;
    sp.source = s;
    sp.dist.assign(g.vertex_count(), kInfinity);
    sp.pred.assign(g.vertex_count(), kNoVertex);
    sp.pred_edge.assign(g.vertex_count(), kNoEdge);
    sp.dist[s] = 0;
    MinHeap heap;
    heap.push({0, s});
    run_dijkstra(g, heap, sp.dist, &sp.pred, &sp.pred_edge);
    return sp;
}

std::vector<Length> dijkstra_distances(const WeightedGraph& g, VertexId s) {
    VertexId src[] = {s};
    return dijkstra_distances(g, src);
}

std::vector<Length> dijkstra_distances(const WeightedGraph& g, std::span<const VertexId> sources) {
    std::vector<Length> dist(g.vertex_count(), kInfinity);
    MinHeap heap;
    for (VertexId s : sources) {
        g.check_vertex(s);
        dist[s] = 0;
        heap.push({0, s});
    }
    run_dijkstra(g, heap, dist, nullptr, nullptr);
    return dist;
}

DistanceMatrix::DistanceMatrix(const WeightedGraph& g) : n_(g.vertex_count()), data_(n_ * n_) {
    for (VertexId s = 0; s < n_; ++s) {
        auto d = dijkstra_distances(g, s);
        std::copy(d.begin(), d.end(), data_.begin() + std::size_t{s} * n_);
    }
}

std::vector<Length> hop_bounded_distances(const WeightedGraph& g, VertexId u, std::size_t hops) {
    g.check_vertex(u);
    const std::size_t n = g.vertex_count();
    std::vector<Length> dist(n, kInfinity);
    dist[u] = 0;
    // Jacobi-style rounds: round k only extends walks that changed in round k-1,
    // so after k rounds dist[] is the best walk with at most k edges.
    std::vector<VertexId> frontier{u};
    std::vector<Length> next;
    std::vector<char> in_next(n, 0);
    for (std::size_t round = 0; round < hops && !frontier.empty(); ++round) {
        next = dist;
        std::vector<VertexId> changed;
        for (VertexId x : frontier) {
            for (const auto& a : g.arcs(x)) {
                const Edge& e = g.edge(a.edge);
                if (e.structural) {
                    continue;
                }
                Length nd = dist[x] + e.w;
                if (nd < next[a.to]) {
                    next[a.to] = nd;
                    if (!in_next[a.to]) {
                        in_next[a.to] = 1;
                        changed.push_back(a.to);
                    }
                }
            }
        }
        for (VertexId x : changed) {
            in_next[x] = 0;
        }
        dist.swap(next);
        frontier.swap(changed);
    }
    return dist;
}

Length hop_bounded_distance(const WeightedGraph& g, VertexId u, VertexId v, std::size_t hops) {
    g.check_vertex(v);
    return hop_bounded_distances(g, u, hops)[v];
}

Length eccentricity(const WeightedGraph& g, VertexId v) {
    auto d = dijkstra_distances(g, v);
    Length best = 0;
    for (Length x : d) {
        if (is_infinite(x)) {
            fail(ErrorKind::domain, "graph is disconnected");
        }
        best = std::max(best, x);
    }
    return best;
}

Length diameter(const WeightedGraph& g) {
    Length best = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        best = std::max(best, eccentricity(g, v));
    }
    return best;
}

std::size_t TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& b : bags) {
        w = std::max(w, b.size());
    }
    return w == 0 ? 0 : w - 1;
}

void TreeDecomposition::normalize() {
    for (auto& b : bags) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
}

TreeDecompositionReport validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td) {
    TreeDecompositionReport rep;
    const std::size_t n = g.vertex_count();
    const std::size_t nb = td.bags.size();
    rep.width = td.width();

    std::vector<std::vector<VertexId>> bags = td.bags;
    for (auto& b : bags) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }

    // Tree structure: nb-1 edges, all endpoints valid, connected.
    if (nb == 0) {
        rep.tree_structure = (n == 0);
        if (!rep.tree_structure) {
            note(rep, "decomposition has no bags");
        }
    } else {
        std::vector<std::size_t> uf(nb);
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](std::size_t x) {
            while (uf[x] != x) {
                x = uf[x] = uf[uf[x]];
            }
            return x;
        };
        bool ok = td.tree_edges.size() + 1 == nb;
        for (auto [a, b] : td.tree_edges) {
            if (a >= nb || b >= nb) {
                ok = false;
                continue;
            }
            auto ra = find(a), rb = find(b);
            if (ra == rb) {
                ok = false;
            } else {
                uf[ra] = rb;
            }
        }
        if (!ok) {
            rep.tree_structure = false;
            note(rep, "bag edges do not form a tree");
        }
    }

    std::vector<std::vector<std::size_t>> bags_of(n);
    for (std::size_t i = 0; i < nb; ++i) {
        for (VertexId v : bags[i]) {
            if (v >= n) {
                rep.vertex_coverage = false;
                note(rep, "bag " + std::to_string(i) + " mentions unknown vertex " + std::to_string(v));
                continue;
            }
            bags_of[v].push_back(i);
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (bags_of[v].empty()) {
            rep.vertex_coverage = false;
            note(rep, "vertex " + std::to_string(v) + " is in no bag");
        }
    }

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.structural) {
            continue;
        }
        const auto& cand = bags_of[ed.u].size() <= bags_of[ed.v].size() ? bags_of[ed.u] : bags_of[ed.v];
        VertexId other = bags_of[ed.u].size() <= bags_of[ed.v].size() ? ed.v : ed.u;
        bool covered = std::any_of(cand.begin(), cand.end(), [&](std::size_t i) {
            return std::binary_search(bags[i].begin(), bags[i].end(), other);
        });
        if (!covered) {
            rep.edge_coverage = false;
            note(rep, "edge (" + std::to_string(ed.u) + "," + std::to_string(ed.v) + ") is in no bag");
        }
    }

    if (!rep.tree_structure) {
        rep.connected_subtrees = false;
        return rep;
    }
    // In a tree, k bags induce a connected subtree iff they span k-1 tree edges.
    std::vector<std::size_t> shared(n, 0);
    for (auto [a, b] : td.tree_edges) {
        const auto& x = bags[a];
        const auto& y = bags[b];
        std::size_t i = 0, j = 0;
        while (i < x.size() && j < y.size()) {
            if (x[i] < y[j]) {
                ++i;
            } else if (y[j] < x[i]) {
                ++j;
            } else {
                if (x[i] < n) {
                    ++shared[x[i]];
                }
                ++i;
                ++j;
            }
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (!bags_of[v].empty() && shared[v] + 1 != bags_of[v].size()) {
            rep.connected_subtrees = false;
            note(rep, "bags containing vertex " + std::to_string(v) + " are not connected");
        }
    }
    return rep;
}

}  // namespace lowtw
