#include "lowtw/portal_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lowtw/error.hpp"
#include "lowtw/random.hpp"
#include "lowtw/tree_emulator.hpp"

namespace lowtw {

namespace {

constexpr std::size_t kMaxHostEdges = 30'000'000;

}  // namespace

PortalSet compute_delta_portals(const RootedTree& t_r, Length delta) {
    require(delta > 0, ErrorKind::argument, "delta must be positive");
    const std::size_t n = t_r.vertex_count();
    PortalSet ps;
    ps.delta = delta;
    ps.is_portal.assign(n, 0);
    ps.portal_parent.assign(n, kNoVertex);
    const auto& depth = t_r.depths();
    for (VertexId v : t_r.preorder()) {
        if (v == t_r.root()) {
            ps.is_portal[v] = 1;
            ps.portals.push_back(v);
            continue;
        }
        VertexId p = t_r.parent(v);
        VertexId anc = ps.is_portal[p] ? p : ps.portal_parent[p];
        ps.portal_parent[v] = anc;
        if (depth[v] - depth[anc] > delta) {
            ps.is_portal[v] = 1;
            ps.portals.push_back(v);
        }
    }
    return ps;
}

std::vector<VertexId> path_portals(const PortalSet& ps, VertexId b) {
    std::vector<VertexId> out;
    for (VertexId x = ps.is_portal[b] ? b : ps.portal_parent[b]; x != kNoVertex; x = ps.portal_parent[x]) {
        out.push_back(x);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

OneToManyEmbedding identity_embedding(const WeightedGraph& g) {
    OneToManyEmbedding e;
    e.host = g;
    e.copies.resize(g.vertex_count());
    e.source_of.resize(g.vertex_count());
    TreeDecomposition td;
    td.bags.emplace_back();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        e.copies[v] = {v};
        e.source_of[v] = v;
        td.bags[0].push_back(v);
    }
    e.host_decomposition = std::move(td);
    return e;
}

PortalEmbedding build_host_graph(const WeightedGraph& g, const Rspd& phi, double eps) {
    return build_host_graph(g, phi, eps, DistanceMatrix(g));
}

PortalEmbedding build_host_graph(const WeightedGraph& g, const Rspd& phi, double eps, const DistanceMatrix& dist) {
    require(eps > 0 && eps < 1, ErrorKind::argument, "eps must lie in (0,1)");
    const std::size_t n = g.vertex_count();
    require(dist.size() == n, ErrorKind::argument, "distance matrix size mismatch");
    require(!phi.nodes.empty() && phi.sp_tree.vertex_count() == n, ErrorKind::argument,
            "decomposition does not match the graph");
    PortalEmbedding pe;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) {
            require(!is_infinite(dist(u, v)), ErrorKind::domain, "graph is disconnected");
            pe.diameter = std::max(pe.diameter, dist(u, v));
        }
    }
    auto& emb = pe.embedding;
    emb.copies.resize(n);
    emb.source_of.resize(n);
    for (VertexId v = 0; v < n; ++v) {
        emb.copies[v] = {v};
        emb.source_of[v] = v;
    }
    pe.copy_node.assign(n, kNoNode);

    if (pe.diameter <= 0) {
        // Every distance is zero: one clique, one bag.
        WeightedGraph h(n);
        TreeDecomposition td;
        td.bags.emplace_back();
        for (VertexId u = 0; u < n; ++u) {
            td.bags[0].push_back(u);
            for (VertexId v = u + 1; v < n; ++v) {
                h.add_edge(u, v, 0);
            }
        }
        emb.host = std::move(h);
        emb.host_decomposition = std::move(td);
        return pe;
    }

    double loglog = std::log2(std::log2(static_cast<double>(std::max<std::size_t>(n, 1))));
    pe.delta = eps * pe.diameter / std::max(1.0, std::isfinite(loglog) ? loglog : 1.0);
    auto ps = compute_delta_portals(phi.sp_tree, pe.delta);

    const std::size_t nodes = phi.nodes.size();
    pe.decomposition_nodes = nodes;
    std::vector<std::vector<VertexId>> portal_vertices(nodes);
    for (std::size_t a = 0; a < nodes; ++a) {
        auto& pv = portal_vertices[a];
        for (VertexId b : phi.nodes[a].boundary_plus) {
            auto path = path_portals(ps, b);
            pv.insert(pv.end(), path.begin(), path.end());
        }
        std::sort(pv.begin(), pv.end());
        pv.erase(std::unique(pv.begin(), pv.end()), pv.end());
        pe.max_node_portals = std::max(pe.max_node_portals, pv.size());
    }

    std::vector<VertexId> node_parent(nodes, kNoVertex);
    for (std::size_t a = 1; a < nodes; ++a) {
        node_parent[a] = static_cast<VertexId>(phi.nodes[a].parent);
    }
    RootedTree node_tree(0, std::move(node_parent), std::vector<Length>(nodes, 1));
    auto emu = build_emulator(node_tree);
    pe.emulator_width = emu.decomposition.width();

    // Host ids: canonical copies first, then per-node portal copies.
    std::vector<std::vector<VertexId>> node_copies(nodes);
    VertexId next = static_cast<VertexId>(n);
    for (std::size_t a = 0; a < nodes; ++a) {
        for (VertexId v : portal_vertices[a]) {
            node_copies[a].push_back(next);
            emb.copies[v].push_back(next);
            emb.source_of.push_back(v);
            pe.copy_node.push_back(a);
            ++next;
        }
    }

    std::size_t estimate = 0;
    for (std::size_t a = 0; a < nodes; ++a) {
        estimate += portal_vertices[a].size() * portal_vertices[a].size() / 2;
    }
    for (const auto& e : emu.graph.edges()) {
        estimate += portal_vertices[e.u].size() * portal_vertices[e.v].size();
    }
    if (estimate > kMaxHostEdges) {
        fail(ErrorKind::resource, "host graph would exceed " + std::to_string(kMaxHostEdges) + " edges");
    }

    WeightedGraph h(next);
    auto link = [&](VertexId x, VertexId y) { h.add_edge(x, y, dist(emb.source_of[x], emb.source_of[y])); };
    // Step 1: clique on each node's copies.
    for (std::size_t a = 0; a < nodes; ++a) {
        const auto& c = node_copies[a];
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                link(c[i], c[j]);
            }
        }
    }
    // Step 2: bicliques along emulator edges.
    for (const auto& e : emu.graph.edges()) {
        for (VertexId x : node_copies[e.u]) {
            for (VertexId y : node_copies[e.v]) {
                link(x, y);
            }
        }
    }
    // Step 3: leaf interiors.
    std::vector<char> interior(n, 0);
    for (std::size_t a = 0; a < nodes; ++a) {
        if (!phi.nodes[a].is_leaf()) {
            continue;
        }
        const auto& in = phi.nodes[a].internal;
        for (std::size_t i = 0; i < in.size(); ++i) {
            interior[in[i]] = 1;
            for (std::size_t j = i + 1; j < in.size(); ++j) {
                link(in[i], in[j]);
            }
            for (VertexId y : node_copies[a]) {
                link(in[i], y);
            }
        }
    }
    // Step 4: remaining vertices hang off their home leaf.
    auto home = home_leaves(phi);
    for (VertexId v = 0; v < n; ++v) {
        if (!interior[v]) {
            require(home[v] != kNoNode, ErrorKind::argument, "vertex is in no leaf piece");
            for (VertexId y : node_copies[home[v]]) {
                link(v, y);
            }
        }
    }
    emb.host = std::move(h);

    // Decomposition: emulator bags with nodes replaced by their copies.
    TreeDecomposition td;
    std::vector<std::size_t> bag_of_node(nodes, kNoNode);
    for (std::size_t b = 0; b < emu.decomposition.bags.size(); ++b) {
        td.bags.emplace_back();
        for (VertexId a : emu.decomposition.bags[b]) {
            td.bags[b].insert(td.bags[b].end(), node_copies[a].begin(), node_copies[a].end());
            if (bag_of_node[a] == kNoNode) {
                bag_of_node[a] = b;
            }
        }
    }
    td.tree_edges = emu.decomposition.tree_edges;
    for (std::size_t a = 0; a < nodes; ++a) {
        if (phi.nodes[a].is_leaf()) {
            std::vector<VertexId> bag(phi.nodes[a].internal.begin(), phi.nodes[a].internal.end());
            bag.insert(bag.end(), node_copies[a].begin(), node_copies[a].end());
            td.tree_edges.emplace_back(bag_of_node[a], td.bags.size());
            td.bags.push_back(std::move(bag));
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (!interior[v]) {
            std::vector<VertexId> bag{v};
            bag.insert(bag.end(), node_copies[home[v]].begin(), node_copies[home[v]].end());
            td.tree_edges.emplace_back(bag_of_node[home[v]], td.bags.size());
            td.bags.push_back(std::move(bag));
        }
    }
    td.normalize();
    emb.host_decomposition = std::move(td);
    return pe;
}

OneToOneEmbedding to_one_to_one(const OneToManyEmbedding& e) {
    OneToOneEmbedding out;
    out.host = e.host;
    out.map.resize(e.source_count());
    for (VertexId v = 0; v < e.source_count(); ++v) {
        out.map[v] = e.canonical(v);
    }
    return out;
}

bool host_edges_exact(const DistanceMatrix& dg, const OneToManyEmbedding& e, double tol) {
    for (const auto& ed : e.host.edges()) {
        if (ed.structural) {
            continue;
        }
        if (std::abs(ed.w - dg(e.source_of[ed.u], e.source_of[ed.v])) > tol) {
            return false;
        }
    }
    return true;
}

DistortionReport measure_distortion(const WeightedGraph& g, const OneToManyEmbedding& e, const DistortionOptions& opts) {
    return measure_distortion(DistanceMatrix(g), e, opts);
}

DistortionReport measure_distortion(const DistanceMatrix& dg, const OneToManyEmbedding& e, const DistortionOptions& opts) {
    const std::size_t n = e.source_count();
    require(dg.size() == n, ErrorKind::argument, "distance matrix size mismatch");
    DistortionReport rep;
    std::vector<VertexId> sources(n);
    std::iota(sources.begin(), sources.end(), 0);
    rep.exhaustive = n <= opts.exhaustive_limit || opts.sampled_sources >= n;
    if (!rep.exhaustive) {
        auto rng = stream_rng(opts.seed, 0);
        std::shuffle(sources.begin(), sources.end(), rng);
        sources.resize(opts.sampled_sources);
        std::sort(sources.begin(), sources.end());
    }
    rep.sources = sources.size();
    rep.min_gap = kInfinity;
    rep.max_gap = -kInfinity;
    double gap_sum = 0, ratio_sum = 0;
    std::size_t ratio_pairs = 0;
    std::vector<double> lo(n), hi(n);
    for (VertexId u : sources) {
        std::fill(lo.begin(), lo.end(), kInfinity);
        std::fill(hi.begin(), hi.end(), -kInfinity);
        std::vector<Length> canon_row;
        std::vector<VertexId> from = e.copies[u];
        if (!rep.exhaustive && from.size() > opts.sampled_extra_copies + 1) {
            auto rng = stream_rng(opts.seed, u + 1);
            std::shuffle(from.begin() + 1, from.end(), rng);
            from.resize(opts.sampled_extra_copies + 1);
        }
        for (VertexId uc : from) {
            auto d = dijkstra_distances(e.host, uc);
            if (uc == e.canonical(u)) {
                canon_row = d;
            }
            for (VertexId x = 0; x < d.size(); ++x) {
                VertexId v = e.source_of[x];
                lo[v] = std::min(lo[v], d[x]);
                hi[v] = std::max(hi[v], d[x]);
            }
        }
        for (VertexId v = 0; v < n; ++v) {
            double base = dg(u, v);
            if (v == u) {
                rep.max_copy_spread = std::max(rep.max_copy_spread, hi[v]);
                continue;
            }
            ++rep.pairs;
            rep.min_gap = std::min(rep.min_gap, lo[v] - base);
            rep.max_gap = std::max(rep.max_gap, hi[v] - base);
            double canon = canon_row[e.canonical(v)];
            rep.max_canonical_gap = std::max(rep.max_canonical_gap, canon - base);
            gap_sum += canon - base;
            if (base > 0) {
                double ratio = canon / base;
                rep.max_ratio = std::max(rep.max_ratio, ratio);
                ratio_sum += ratio;
                ++ratio_pairs;
            }
        }
    }
    if (rep.pairs == 0) {
        rep.min_gap = rep.max_gap = 0;
    }
    rep.mean_canonical_gap = rep.pairs ? gap_sum / static_cast<double>(rep.pairs) : 0;
    rep.mean_ratio = ratio_pairs ? ratio_sum / static_cast<double>(ratio_pairs) : 1;
    rep.dominating = rep.min_gap >= -kLengthTolerance;
    return rep;
}

}  // namespace lowtw
