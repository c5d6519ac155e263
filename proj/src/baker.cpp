#include "lowtw/baker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>

#include "lowtw/error.hpp"
#include "lowtw/portal_embedding.hpp"
#include "lowtw/rspd.hpp"

namespace lowtw {

double snap_baker_eps(double eps) {
    require(eps > 0 && eps <= 0.5, ErrorKind::argument, "eps must lie in (0,1/2]");
    double k = std::ceil(2.0 / eps - 1e-9);
    return 2.0 / k;
}

namespace {

std::size_t shift_count(double eps) { return static_cast<std::size_t>(std::llround(2.0 / eps)); }

void check_eps(double eps) {
    require(eps > 0 && eps <= 0.5, ErrorKind::argument, "eps must lie in (0,1/2]");
    double k = 2.0 / eps;
    require(std::abs(k - std::round(k)) < 1e-9, ErrorKind::argument, "2/eps must be an integer");
}

bool in_core(double d, double width, int sigma) {
    if (d < sigma - 1) {
        return true;
    }
    if (d < sigma) {
        return false;
    }
    double t = d - sigma;
    double j = std::floor(t / width);
    double off = t - j * width;
    return off >= 1 && off <= width - 1;
}

WeightedGraph scaled(const WeightedGraph& g, double factor) {
    WeightedGraph out(g.vertex_count());
    for (const auto& e : g.edges()) {
        out.add_edge(e.u, e.v, e.w * factor, e.structural);
    }
    if (g.has_rotation() && g.vertex_count() > 0) {
        out.set_rotation(g.rotation());
    }
    return out;
}

}  // namespace

LayerFamily build_layers(const WeightedGraph& g, VertexId r, double eps, int sigma) {
    check_eps(eps);
    const auto shifts = shift_count(eps);
    require(sigma >= 0 && static_cast<std::size_t>(sigma) < shifts, ErrorKind::argument, "shift out of range");
    g.check_vertex(r);
    LayerFamily fam;
    fam.eps = eps;
    fam.sigma = sigma;
    const double width = static_cast<double>(shifts);
    auto dist = dijkstra_distances(g, r);
    Length maxd = 0;
    for (Length d : dist) {
        require(!is_infinite(d), ErrorKind::domain, "graph is disconnected");
        maxd = std::max(maxd, d);
    }
    const double s = sigma;
    for (int j = -1;; ++j) {
        Layer layer;
        layer.j = j;
        AnnulusSpec spec;
        if (j < 0) {
            layer.full = {0, s, false};
            layer.inner = {0, s - 1, false};
            spec.inner = 0;
            spec.outer = s;
            spec.outer_inclusive = false;
            spec.root_weight = RootEdgeWeight::root_distance;
        } else {
            double lo = width * j + s;
            if (lo > maxd) {
                break;
            }
            layer.full = {lo, lo + width, true};
            layer.inner = {lo + 1, lo + width - 1, true};
            spec.inner = lo;
            spec.outer = lo + width;
            spec.outer_inclusive = true;
            spec.root_weight = RootEdgeWeight::unit;
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (layer.full.contains(dist[v])) {
                layer.members.push_back(v);
                if (layer.inner.contains(dist[v])) {
                    layer.core.push_back(v);
                }
            }
        }
        if (!layer.members.empty()) {
            layer.graph = contract_annulus(g, r, dist, spec);
            layer.diameter = diameter(layer.graph.graph);
        }
        fam.layers.push_back(std::move(layer));
    }
    return fam;
}

std::vector<std::size_t> shift_membership_counts(const WeightedGraph& g, VertexId r, double eps) {
    check_eps(eps);
    const auto shifts = shift_count(eps);
    auto dist = dijkstra_distances(g, r);
    std::vector<std::size_t> counts(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (std::size_t sigma = 0; sigma < shifts; ++sigma) {
            counts[v] += in_core(dist[v], static_cast<double>(shifts), static_cast<int>(sigma));
        }
    }
    return counts;
}

RhoIndependentSet brute_force_rho_is(const WeightedGraph& g, double rho, std::span<const double> mu,
                                     std::span<const VertexId> terminals) {
    require(mu.size() == g.vertex_count(), ErrorKind::argument, "measure size mismatch");
    std::vector<VertexId> terms(terminals.begin(), terminals.end());
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.size() > kMaxOracleTerminals) {
        fail(ErrorKind::resource, "brute-force oracle is limited to 25 terminals");
    }
    for (VertexId t : terms) {
        g.check_vertex(t);
        require(mu[t] >= 0, ErrorKind::argument, "measures must be non-negative");
    }
    RhoIndependentSet best;
    const std::size_t k = terms.size();
    if (k == 0) {
        return best;
    }
    std::sort(terms.begin(), terms.end(), [&](VertexId a, VertexId b) {
        return mu[a] != mu[b] ? mu[a] > mu[b] : a < b;
    });
    const double tol = kLengthTolerance * std::max(1.0, rho);
    std::vector<std::uint32_t> conflict(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        auto d = dijkstra_distances(g, terms[i]);
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && d[terms[j]] < rho - tol) {
                conflict[i] |= std::uint32_t{1} << j;
            }
        }
    }
    std::vector<double> suffix(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) {
        suffix[i] = suffix[i + 1] + mu[terms[i]];
    }
    std::uint32_t best_mask = 0;
    double best_value = -1;
    std::function<void(std::size_t, std::uint32_t, std::uint32_t, double)> search =
        [&](std::size_t i, std::uint32_t chosen, std::uint32_t blocked, double value) {
            if (value > best_value) {
                best_value = value;
                best_mask = chosen;
            }
            if (i == k || value + suffix[i] <= best_value) {
                return;
            }
            if (!(blocked >> i & 1)) {
                search(i + 1, chosen | std::uint32_t{1} << i, blocked | conflict[i], value + mu[terms[i]]);
            }
            search(i + 1, chosen, blocked, value);
        };
    search(0, 0, 0, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        if (best_mask >> i & 1) {
            best.vertices.push_back(terms[i]);
        }
    }
    std::sort(best.vertices.begin(), best.vertices.end());
    best.value = best_value;
    return best;
}

BakerResult bicriteria_is(const WeightedGraph& g, VertexId r, double rho, double eps, std::span<const double> mu) {
    require(rho > 0, ErrorKind::argument, "rho must be positive");
    require(mu.size() == g.vertex_count(), ErrorKind::argument, "measure size mismatch");
    for (double m : mu) {
        require(m >= 0, ErrorKind::argument, "measures must be non-negative");
    }
    BakerResult res;
    res.requested_eps = eps;
    res.eps = snap_baker_eps(eps);
    res.rho = rho;
    const double e = res.eps;
    const double delta = e * e / 12;
    auto gs = scaled(g, 1.0 / rho);
    const auto shifts = shift_count(e);
    for (std::size_t sigma = 0; sigma < shifts; ++sigma) {
        auto fam = build_layers(gs, r, e, static_cast<int>(sigma));
        ShiftResult sr;
        sr.sigma = static_cast<int>(sigma);
        for (const auto& layer : fam.layers) {
            if (layer.members.empty()) {
                continue;
            }
            ++sr.layers;
            sr.max_layer_diameter = std::max(sr.max_layer_diameter, layer.diameter);
            if (layer.core.empty()) {
                continue;
            }
            const auto& lg = layer.graph.graph;
            auto phi = build_rspd(lg, 0);
            auto pe = build_host_graph(lg, phi, delta);
            const auto& host = pe.embedding.host;
            sr.max_host_width = std::max(sr.max_host_width, pe.embedding.host_decomposition.width());
            std::vector<double> mu_h(host.vertex_count(), 0.0);
            std::vector<VertexId> terminals;
            for (VertexId u : layer.core) {
                VertexId x = pe.embedding.canonical(layer.graph.from_source[u]);
                mu_h[x] = mu[u];
                terminals.push_back(x);
            }
            auto sol = brute_force_rho_is(host, 1 - e / 2, mu_h, terminals);
            for (VertexId x : sol.vertices) {
                VertexId u = layer.graph.to_source[pe.embedding.source_of[x]];
                sr.vertices.push_back(u);
                sr.value += mu[u];
            }
        }
        std::sort(sr.vertices.begin(), sr.vertices.end());
        res.shifts.push_back(std::move(sr));
    }
    for (const auto& sr : res.shifts) {
        if (sr.sigma == 0 || sr.value > res.value) {
            res.value = sr.value;
            res.vertices = sr.vertices;
            res.best_sigma = sr.sigma;
        }
    }
    return res;
}

}  // namespace lowtw
