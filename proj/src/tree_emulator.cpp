#include "lowtw/tree_emulator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lowtw/error.hpp"

namespace lowtw {

TreeDistanceOracle::TreeDistanceOracle(const RootedTree& t)
    : level_(t.vertex_count(), 0), depth_(t.depths()), tin_(t.vertex_count(), 0), tout_(t.vertex_count(), 0) {
    const std::size_t n = t.vertex_count();
    std::size_t log = 1;
    while ((std::size_t{1} << log) < n) {
        ++log;
    }
    up_.assign(log, std::vector<VertexId>(n, t.root()));
    for (VertexId v : t.preorder()) {
        if (v != t.root()) {
            up_[0][v] = t.parent(v);
            level_[v] = level_[t.parent(v)] + 1;
        }
    }
    for (std::size_t k = 1; k < log; ++k) {
        for (VertexId v = 0; v < n; ++v) {
            up_[k][v] = up_[k - 1][up_[k - 1][v]];
        }
    }
    // Euler intervals for ancestor tests.
    std::size_t clock = 0;
    std::vector<std::pair<VertexId, std::size_t>> stack;
    if (n > 0) {
        stack.emplace_back(t.root(), 0);
        tin_[t.root()] = clock++;
    }
    while (!stack.empty()) {
        auto& [v, i] = stack.back();
        auto kids = t.children(v);
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

VertexId TreeDistanceOracle::lca(VertexId u, VertexId v) const {
    if (is_ancestor(u, v)) {
        return u;
    }
    if (is_ancestor(v, u)) {
        return v;
    }
    for (std::size_t k = up_.size(); k-- > 0;) {
        if (!is_ancestor(up_[k][u], v)) {
            u = up_[k][u];
        }
    }
    return up_[0][u];
}

Length TreeDistanceOracle::distance(VertexId u, VertexId v) const {
    return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)];
}

Length tree_distance(const RootedTree& t, VertexId u, VertexId v) {
    require(u < t.vertex_count() && v < t.vertex_count(), ErrorKind::argument, "vertex id out of range");
    return TreeDistanceOracle(t).distance(u, v);
}

std::vector<VertexId> chop_to_pieces(const RootedTree& t, std::size_t ell) {
    require(ell >= 1, ErrorKind::argument, "ell must be at least 1");
    const auto& pre = t.preorder();
    std::vector<std::size_t> size(t.vertex_count(), 1);
    std::vector<VertexId> cut;
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
        VertexId v = *it;
        if (size[v] >= ell + 1) {
            cut.push_back(v);
            size[v] = 0;
        }
        if (v != t.root()) {
            size[t.parent(v)] += size[v];
        }
    }
    std::sort(cut.begin(), cut.end());
    return cut;
}

std::vector<VertexId> lca_closure(const RootedTree& t, std::span<const VertexId> a) {
    const std::size_t n = t.vertex_count();
    std::vector<char> marked(n, 0);
    for (VertexId v : a) {
        require(v < n, ErrorKind::argument, "vertex id out of range");
        marked[v] = 1;
    }
    std::vector<char> has(n, 0);
    std::vector<std::size_t> branches(n, 0);
    const auto& pre = t.preorder();
    std::vector<VertexId> out;
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
        VertexId v = *it;
        if (marked[v] || branches[v] >= 2) {
            out.push_back(v);
        }
        has[v] = marked[v] || branches[v] > 0;
        if (has[v] && v != t.root()) {
            ++branches[t.parent(v)];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TreeDivision tree_division(const RootedTree& t, std::size_t ell) {
    TreeDivision div;
    auto a = chop_to_pieces(t, ell);
    div.separator = lca_closure(t, a);
    const std::size_t n = t.vertex_count();
    std::vector<char> in_x(n, 0);
    for (VertexId x : div.separator) {
        in_x[x] = 1;
    }
    std::vector<std::size_t> comp(n, 0);
    for (VertexId v : t.preorder()) {
        bool has_parent = v != t.root();
        VertexId p = has_parent ? t.parent(v) : kNoVertex;
        if (in_x[v]) {
            if (has_parent && !in_x[p]) {
                div.outgoing[comp[p]].push_back(v);
            }
            continue;
        }
        if (has_parent && !in_x[p]) {
            comp[v] = comp[p];
        } else {
            comp[v] = div.components.size();
            div.components.emplace_back();
            div.outgoing.emplace_back();
            if (has_parent) {
                div.outgoing.back().push_back(p);
            }
        }
        div.components[comp[v]].push_back(v);
    }
    return div;
}

std::size_t division_parameter(std::size_t n) {
    auto root = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n))));
    return root <= 1 ? 1 : std::max<std::size_t>(1, root - 1);
}

std::size_t emulator_hop_bound(std::size_t n) {
    if (n <= 4) {
        return 2;
    }
    const double c = 2.0 / std::log2(1.5);
    return 1 + static_cast<std::size_t>(std::ceil(c * std::log2(std::log2(static_cast<double>(n)))));
}

namespace {

class EmulatorBuilder {
public:
    explicit EmulatorBuilder(const RootedTree& t) : oracle_(t) {}

    // `ids` maps local vertices of `local` to global ids.
    TreeDecomposition run(const std::vector<VertexId>& ids, const RootedTree& local) {
        const std::size_t n = ids.size();
        TreeDecomposition td;
        if (n <= 2) {
            for (VertexId v = 0; v < n; ++v) {
                if (v != local.root()) {
                    add(ids[v], ids[local.parent(v)]);
                }
            }
            td.bags.push_back(ids);
            return td;
        }
        auto div = tree_division(local, division_parameter(n));

        // Separator tree T_X: parent of x is its nearest proper ancestor in X.
        std::vector<VertexId> x_index(n, kNoVertex);
        for (std::size_t i = 0; i < div.separator.size(); ++i) {
            x_index[div.separator[i]] = static_cast<VertexId>(i);
        }
        std::vector<VertexId> near_x(n, kNoVertex);
        std::vector<VertexId> x_parent(div.separator.size(), kNoVertex);
        VertexId x_root = kNoVertex;
        for (VertexId v : local.preorder()) {
            VertexId above = v == local.root() ? kNoVertex : near_x[local.parent(v)];
            if (x_index[v] != kNoVertex) {
                if (above == kNoVertex) {
                    x_root = x_index[v];
                } else {
                    x_parent[x_index[v]] = x_index[above];
                }
                near_x[v] = v;
            } else {
                near_x[v] = above;
            }
        }
        std::vector<VertexId> x_ids(div.separator.size());
        for (std::size_t i = 0; i < div.separator.size(); ++i) {
            x_ids[i] = ids[div.separator[i]];
        }
        RootedTree tx(x_root, x_parent, std::vector<Length>(x_ids.size(), 0));
        td = run(x_ids, tx);

        std::unordered_map<VertexId, std::vector<std::size_t>> bags_of;
        for (std::size_t b = 0; b < td.bags.size(); ++b) {
            for (VertexId v : td.bags[b]) {
                bags_of[v].push_back(b);
            }
        }

        std::vector<VertexId> pos(n, kNoVertex);
        for (std::size_t c = 0; c < div.components.size(); ++c) {
            const auto& comp = div.components[c];
            std::vector<VertexId> out_ids;
            for (VertexId o : div.outgoing[c]) {
                out_ids.push_back(ids[o]);
            }
            // Components list vertices in preorder, so comp[0] is the top.
            std::vector<VertexId> c_ids(comp.size());
            std::vector<VertexId> c_parent(comp.size(), kNoVertex);
            for (std::size_t i = 0; i < comp.size(); ++i) {
                pos[comp[i]] = static_cast<VertexId>(i);
                c_ids[i] = ids[comp[i]];
                if (i > 0) {
                    c_parent[i] = pos[local.parent(comp[i])];
                }
                for (VertexId o : out_ids) {
                    add(c_ids[i], o);
                }
            }
            RootedTree tc(0, std::move(c_parent), std::vector<Length>(comp.size(), 0));
            auto sub = run(c_ids, tc);

            std::size_t attach = 0;
            if (!out_ids.empty()) {
                attach = find_bag(td, bags_of, out_ids);
            }
            std::size_t offset = td.bags.size();
            for (auto& bag : sub.bags) {
                bag.insert(bag.end(), out_ids.begin(), out_ids.end());
                td.bags.push_back(std::move(bag));
            }
            for (auto [a, b] : sub.tree_edges) {
                td.tree_edges.emplace_back(a + offset, b + offset);
            }
            td.tree_edges.emplace_back(attach, offset);
        }
        return td;
    }

    WeightedGraph graph(std::size_t n) const {
        std::vector<std::pair<std::uint64_t, Length>> sorted(edges_.begin(), edges_.end());
        std::sort(sorted.begin(), sorted.end());
        WeightedGraph g(n);
        for (const auto& [key, w] : sorted) {
            g.add_edge(static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu), w);
        }
        return g;
    }

private:
    void add(VertexId a, VertexId b) {
        if (a == b) {
            return;
        }
        auto key = (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
        if (!edges_.count(key)) {
            edges_.emplace(key, oracle_.distance(a, b));
        }
    }

    static std::size_t find_bag(const TreeDecomposition& td,
                                const std::unordered_map<VertexId, std::vector<std::size_t>>& bags_of,
                                const std::vector<VertexId>& want) {
        auto it = bags_of.find(want[0]);
        require(it != bags_of.end(), ErrorKind::validation, "separator vertex missing from decomposition");
        for (std::size_t b : it->second) {
            const auto& bag = td.bags[b];
            bool all = std::all_of(want.begin(), want.end(), [&](VertexId v) {
                return std::find(bag.begin(), bag.end(), v) != bag.end();
            });
            if (all) {
                return b;
            }
        }
        fail(ErrorKind::validation, "no separator bag holds both outgoing vertices");
    }

    TreeDistanceOracle oracle_;
    std::unordered_map<std::uint64_t, Length> edges_;
};

}  // namespace

Emulator build_emulator(const RootedTree& t) {
    const std::size_t n = t.vertex_count();
    Emulator em;
    em.hop_bound = emulator_hop_bound(n);
    if (n == 0) {
        return em;
    }
    EmulatorBuilder builder(t);
    std::vector<VertexId> ids(n);
    for (VertexId v = 0; v < n; ++v) {
        ids[v] = v;
    }
    em.decomposition = builder.run(ids, t);
    em.decomposition.normalize();
    em.graph = builder.graph(n);
    return em;
}

}  // namespace lowtw
