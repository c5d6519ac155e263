#include "lowtw/rooted_stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>
#include <utility>

#include "lowtw/error.hpp"
#include "lowtw/random.hpp"

namespace lowtw {

double BandSlicing::upper_scaled(int i) const {
    return std::pow(1.0 / eps, (static_cast<double>(i) + x) / eps);
}

double BandSlicing::upper(int i) const { return scale * upper_scaled(i); }

BandSlicing slice_bands(const WeightedGraph& g, VertexId r, double eps, double x) {
    require(eps > 0 && eps < 1, ErrorKind::argument, "eps must lie in (0,1)");
    require(x >= 0 && x < 1, ErrorKind::argument, "x must lie in [0,1)");
    g.check_vertex(r);
    BandSlicing s;
    s.eps = eps;
    s.x = x;
    s.root = r;
    s.root_distance = dijkstra_distances(g, r);
    const std::size_t n = g.vertex_count();
    Length min_d = kInfinity;
    for (VertexId v = 0; v < n; ++v) {
        if (v == r) {
            continue;
        }
        Length d = s.root_distance[v];
        require(!is_infinite(d), ErrorKind::domain, "graph is disconnected");
        require(d > 0, ErrorKind::domain, "a non-root vertex sits at distance 0 from the root");
        min_d = std::min(min_d, d);
    }
    s.scale = is_infinite(min_d) ? 1.0 : min_d;
    s.band_of.assign(n, -1);
    const double log_base = std::log(1.0 / eps);
    for (VertexId v = 0; v < n; ++v) {
        if (v == r) {
            continue;
        }
        Length d = s.root_distance[v];
        double t = std::log(d / s.scale) / log_base;
        int i = std::max(0, static_cast<int>(std::floor(eps * t - x)) + 1);
        while (d >= s.upper(i)) {
            ++i;
        }
        while (i > 0 && d < s.lower(i)) {
            --i;
        }
        s.band_of[v] = i;
        if (s.bands.size() <= static_cast<std::size_t>(i)) {
            s.bands.resize(i + 1);
        }
        s.bands[i].push_back(v);
    }
    return s;
}

BandSlicing sample_bands(const WeightedGraph& g, VertexId r, double eps, std::uint64_t seed, std::uint64_t trial) {
    auto rng = stream_rng(seed, trial);
    return slice_bands(g, r, eps, unit_uniform(rng));
}

ContractedGraph band_graph(const WeightedGraph& g, const BandSlicing& s, int i) {
    require(i >= 0, ErrorKind::argument, "band index must be non-negative");
    AnnulusSpec spec;
    spec.inner = s.lower(i);
    spec.outer = s.upper(i);
    spec.outer_inclusive = false;
    spec.root_weight = RootEdgeWeight::root_distance;
    return contract_annulus(g, s.root, s.root_distance, spec);
}

bool is_successful(const BandSlicing& s, VertexId v) {
    require(v < s.band_of.size(), ErrorKind::argument, "vertex out of range");
    int i = s.band_of[v];
    if (i < 0) {
        return true;
    }
    Length d = s.root_distance[v];
    return d >= s.lower(i) / s.eps && d <= s.eps * s.upper(i);
}

namespace {

struct BandHost {
    OneToManyEmbedding embedding;
    std::size_t width = 0;
    bool fallback = false;
};

OneToManyEmbedding clique_host(const WeightedGraph& g) {
    DistanceMatrix dg(g);
    OneToManyEmbedding e;
    const std::size_t n = g.vertex_count();
    e.host = WeightedGraph(n);
    e.copies.resize(n);
    e.source_of.resize(n);
    e.host_decomposition.bags.emplace_back();
    for (VertexId u = 0; u < n; ++u) {
        e.copies[u] = {u};
        e.source_of[u] = u;
        e.host_decomposition.bags[0].push_back(u);
        for (VertexId v = u + 1; v < n; ++v) {
            e.host.add_edge(u, v, dg(u, v));
        }
    }
    return e;
}

BandHost embed_band(const WeightedGraph& band, double eps_emb, std::size_t eta) {
    BandHost bh;
    if (!is_planar_embedding(band)) {
        if (band.vertex_count() > eta + 1) {
            fail(ErrorKind::embedding, "band graph lost its planar rotation system");
        }
        bh.embedding = clique_host(band);
        bh.fallback = true;
    } else {
        auto phi = build_rspd(band, 0, eta);
        bh.embedding = std::move(build_host_graph(band, phi, eps_emb).embedding);
    }
    bh.width = bh.embedding.host_decomposition.width();
    return bh;
}

double band_eps(double eps) { return std::pow(eps, 1.0 / eps); }

}  // namespace

RootedEmbedding build_rooted_embedding(const WeightedGraph& g, VertexId r, double eps, std::uint64_t seed,
                                       std::uint64_t trial, std::size_t eta) {
    require(eps > 0 && eps <= kMaxRootedEps, ErrorKind::argument, "eps must lie in (0,1/4]");
    RootedEmbedding re;
    re.slicing = sample_bands(g, r, eps, seed, trial);
    re.band_eps = band_eps(eps);
    const auto& s = re.slicing;
    const std::size_t n = g.vertex_count();
    auto& out = re.embedding;
    out.host = WeightedGraph(n);
    out.copies.resize(n);
    out.source_of.resize(n);
    for (VertexId v = 0; v < n; ++v) {
        out.copies[v] = {v};
        out.source_of[v] = v;
    }
    auto& td = out.host_decomposition;
    td.bags.push_back({r});

    for (std::size_t i = 0; i < s.bands.size(); ++i) {
        if (s.bands[i].empty()) {
            continue;
        }
        auto cg = band_graph(g, s, static_cast<int>(i));
        auto bh = embed_band(cg.graph, re.band_eps, eta);
        const auto& local = bh.embedding;
        const std::size_t m = cg.graph.vertex_count();
        std::vector<VertexId> to_global(local.host.vertex_count());
        for (VertexId x = 0; x < to_global.size(); ++x) {
            VertexId src = cg.to_source[local.source_of[x]];
            if (x < m) {
                to_global[x] = src;
            } else {
                VertexId y = out.host.add_vertex();
                out.source_of.push_back(src);
                out.copies[src].push_back(y);
                to_global[x] = y;
            }
        }
        for (const auto& e : local.host.edges()) {
            out.host.add_edge(to_global[e.u], to_global[e.v], e.w, e.structural);
        }
        const std::size_t offset = td.bags.size();
        for (const auto& bag : local.host_decomposition.bags) {
            std::vector<VertexId> mapped{r};
            for (VertexId x : bag) {
                mapped.push_back(to_global[x]);
            }
            td.bags.push_back(std::move(mapped));
        }
        for (auto [a, b] : local.host_decomposition.tree_edges) {
            td.tree_edges.emplace_back(offset + a, offset + b);
        }
        td.tree_edges.emplace_back(0, offset);

        BandRecord rec;
        rec.band = static_cast<int>(i);
        rec.members = s.bands[i].size();
        rec.host_vertices = local.host.vertex_count();
        rec.host_edges = local.host.edge_count();
        rec.width = bh.width;
        rec.fallback_clique = bh.fallback;
        re.bands.push_back(rec);
    }

    std::unordered_set<VertexId> linked;
    for (const auto& a : out.host.arcs(r)) {
        linked.insert(a.to);
    }
    for (VertexId v = 0; v < n; ++v) {
        if (v != r && !linked.count(v)) {
            out.host.add_edge(r, v, s.root_distance[v]);
        }
    }
    td.normalize();
    return re;
}

namespace {

struct CachedBand {
    std::vector<VertexId> members;  // source id of each band-graph vertex, root first
    std::vector<Length> host_dist;  // canonical-copy distances in the band host
    std::vector<Length> inside;     // distances in G[B_i], indexed like host_dist
    Length diameter = 0;
    std::size_t width = 0;
};

CachedBand analyse_band(const WeightedGraph& g, const BandSlicing& s, int i, double eps_emb, std::size_t eta) {
    CachedBand cb;
    auto cg = band_graph(g, s, i);
    auto bh = embed_band(cg.graph, eps_emb, eta);
    const std::size_t m = cg.graph.vertex_count();
    cb.members = cg.to_source;
    cb.width = bh.width;
    cb.host_dist.assign(m * m, kInfinity);
    for (VertexId a = 0; a < m; ++a) {
        auto d = dijkstra_distances(bh.embedding.host, a);
        std::copy(d.begin(), d.begin() + m, cb.host_dist.begin() + a * m);
    }
    cb.diameter = diameter(cg.graph);

    WeightedGraph inner(m);
    for (const auto& e : cg.graph.edges()) {
        if (e.u != 0 && e.v != 0) {
            inner.add_edge(e.u, e.v, e.w, e.structural);
        }
    }
    cb.inside.assign(m * m, kInfinity);
    for (VertexId a = 1; a < m; ++a) {
        auto d = dijkstra_distances(inner, a);
        std::copy(d.begin(), d.end(), cb.inside.begin() + a * m);
    }
    return cb;
}

}  // namespace

RootedStats rooted_distortion_stats(const WeightedGraph& g, VertexId r, double eps, std::size_t trials,
                                    std::uint64_t seed, const RootedStatsOptions& opts) {
    require(eps > 0 && eps <= kMaxRootedEps, ErrorKind::argument, "eps must lie in (0,1/4]");
    require(trials > 0, ErrorKind::argument, "at least one trial is required");
    const std::size_t n = g.vertex_count();
    const double eps_emb = band_eps(eps);
    DistanceMatrix dg(g);
    const auto root_dist = dg.row(r);
    RootedStats st;
    st.trials = trials;
    st.vertices = n;
    st.eps = eps;
    st.gap_constant = opts.gap_constant;

    std::map<std::pair<std::size_t, std::size_t>, CachedBand> cache;
    std::vector<std::size_t> unsuccessful(n, 0);
    std::vector<double> gap_sum(n * n, 0.0);
    std::vector<Length> dh(n * n);
    std::vector<std::size_t> local_index(n);

    for (std::size_t t = 0; t < trials; ++t) {
        auto s = sample_bands(g, r, eps, seed, t);
        st.scale = s.scale;
        const auto& dr = s.root_distance;
        for (VertexId u = 0; u < n; ++u) {
            for (VertexId v = 0; v < n; ++v) {
                dh[u * n + v] = u == v ? 0 : dr[u] + dr[v];
            }
        }
        std::vector<const CachedBand*> band_cache(s.bands.size(), nullptr);
        for (std::size_t i = 0; i < s.bands.size(); ++i) {
            if (s.bands[i].empty()) {
                continue;
            }
            Length lo = s.lower(static_cast<int>(i));
            Length hi = s.upper(static_cast<int>(i));
            std::size_t below_lo = 0;
            std::size_t below_hi = 0;
            for (Length d : dr) {
                below_lo += d < lo;
                below_hi += d < hi;
            }
            auto key = std::make_pair(below_lo, below_hi);
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, analyse_band(g, s, static_cast<int>(i), eps_emb, opts.eta)).first;
            }
            const auto& cb = it->second;
            band_cache[i] = &cb;
            st.max_width = std::max(st.max_width, cb.width + 1);
            if (cb.diameter > 2 * hi + kLengthTolerance * std::max(1.0, hi)) {
                ++st.diameter_violations;
            }
            const std::size_t m = cb.members.size();
            for (std::size_t a = 1; a < m; ++a) {
                for (std::size_t b = 1; b < m; ++b) {
                    if (a != b) {
                        VertexId u = cb.members[a];
                        VertexId v = cb.members[b];
                        dh[u * n + v] = std::min(dh[u * n + v], cb.host_dist[a * m + b]);
                    }
                }
            }
        }

        for (VertexId u = 0; u < n; ++u) {
            bool ok = is_successful(s, u);
            if (!ok) {
                ++unsuccessful[u];
            }
            double worst = -kInfinity;
            for (VertexId v = 0; v < n; ++v) {
                double gap = dh[u * n + v] - dg(u, v);
                gap_sum[u * n + v] += gap;
                if (gap < -kLengthTolerance * std::max(1.0, dg(u, v))) {
                    ++st.dominance_violations;
                }
                worst = std::max(worst, gap - opts.gap_constant * eps * (dr[u] + dr[v]));
            }
            if (!ok || u == r) {
                continue;
            }
            ++st.successful_checks;
            double tol = kLengthTolerance * std::max(1.0, dr[u]);
            if (worst > tol) {
                ++st.ramsey_violations;
            }
            st.worst_ramsey_excess = std::max(st.worst_ramsey_excess, worst);

            const auto* cb = band_cache[s.band_of[u]];
            const std::size_t m = cb->members.size();
            for (std::size_t a = 0; a < m; ++a) {
                local_index[cb->members[a]] = a;
            }
            std::size_t a = local_index[u];
            for (std::size_t b = 1; b < m; ++b) {
                VertexId v = cb->members[b];
                if (v == u || cb->inside[a * m + b] > dg(u, v) + kLengthTolerance * std::max(1.0, dg(u, v))) {
                    continue;
                }
                ++st.contained_checks;
                if (dh[u * n + v] - dg(u, v) > 2 * eps * dr[u] + tol) {
                    ++st.contained_violations;
                }
            }
        }
    }

    st.distinct_band_graphs = cache.size();
    double rate_sum = 0;
    std::size_t counted = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (v == r) {
            continue;
        }
        double rate = static_cast<double>(unsuccessful[v]) / static_cast<double>(trials);
        st.max_unsuccessful_rate = std::max(st.max_unsuccessful_rate, rate);
        rate_sum += rate;
        ++counted;
    }
    st.mean_unsuccessful_rate = counted ? rate_sum / static_cast<double>(counted) : 0.0;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) {
            if (u == v) {
                continue;
            }
            double mean = gap_sum[u * n + v] / static_cast<double>(trials);
            st.max_mean_gap = std::max(st.max_mean_gap, mean);
            double norm = root_dist[u] + root_dist[v];
            if (norm > 0) {
                st.max_normalized_mean_gap = std::max(st.max_normalized_mean_gap, mean / norm);
            }
        }
    }
    return st;
}

}  // namespace lowtw
