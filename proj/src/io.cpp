#include "lowtw/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lowtw/error.hpp"

namespace lowtw {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    fail(ErrorKind::io, "line " + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::io, "cannot open " + path);
    }
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorKind::io, "cannot write " + path);
    }
    return out;
}

std::size_t to_index(long long one_based, std::size_t limit, std::size_t line, const char* what) {
    if (one_based < 1 || static_cast<std::size_t>(one_based) > limit) {
        parse_error(line, std::string(what) + " id out of range");
    }
    return static_cast<std::size_t>(one_based - 1);
}

void write_length(std::ostream& out, Length w) {
    // Shortest text that reads back to the same double.
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, w);
    out.write(buf, res.ptr - buf);
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
    std::string text;
    std::size_t line_no = 0;
    bool header = false;
    std::size_t n = 0;
    std::size_t m = 0;
    WeightedGraph g;
    std::vector<std::pair<std::size_t, std::vector<long long>>> rot_lines;
    while (std::getline(in, text)) {
        ++line_no;
        std::istringstream ls(text);
        std::string tok;
        if (!(ls >> tok)) {
            continue;
        }
        if (tok == "c") {
            std::string kind;
            if (ls >> kind && kind == "rot") {
                long long v = 0;
                if (!(ls >> v)) {
                    parse_error(line_no, "rotation line without a vertex");
                }
                std::vector<long long> ids{v};
                long long e = 0;
                while (ls >> e) {
                    ids.push_back(e);
                }
                rot_lines.emplace_back(line_no, std::move(ids));
            }
            continue;
        }
        if (tok == "p") {
            std::string kind;
            if (header || !(ls >> kind >> n >> m)) {
                parse_error(line_no, "bad or repeated header");
            }
            header = true;
            g = WeightedGraph(n);
            continue;
        }
        if (!header) {
            parse_error(line_no, "edge before header");
        }
        long long u = 0;
        long long v = 0;
        try {
            u = std::stoll(tok);
        } catch (const std::exception&) {
            parse_error(line_no, "expected an edge line");
        }
        if (!(ls >> v)) {
            parse_error(line_no, "edge line needs two endpoints");
        }
        Length w = 1.0;
        bool structural = false;
        std::string extra;
        if (ls >> extra) {
            try {
                w = std::stod(extra);
            } catch (const std::exception&) {
                parse_error(line_no, "bad edge weight");
            }
            if (ls >> extra) {
                structural = extra == "s";
            }
        }
        if (!(w >= 0) || is_infinite(w)) {
            parse_error(line_no, "edge weights must be finite and non-negative");
        }
        auto a = static_cast<VertexId>(to_index(u, n, line_no, "vertex"));
        auto b = static_cast<VertexId>(to_index(v, n, line_no, "vertex"));
        if (a == b) {
            parse_error(line_no, "self-loops are not allowed");
        }
        g.add_edge(a, b, w, structural);
    }
    if (!header) {
        fail(ErrorKind::io, "missing \"p tw\" header");
    }
    if (g.edge_count() != m) {
        fail(ErrorKind::io, "header announces " + std::to_string(m) + " edges, found " +
                                std::to_string(g.edge_count()));
    }
    if (!rot_lines.empty()) {
        RotationSystem rot(n);
        std::vector<char> seen(n, 0);
        for (const auto& [line, ids] : rot_lines) {
            std::size_t v = to_index(ids[0], n, line, "vertex");
            if (seen[v]) {
                parse_error(line, "vertex has two rotation lines");
            }
            seen[v] = 1;
            for (std::size_t i = 1; i < ids.size(); ++i) {
                rot[v].push_back(static_cast<EdgeId>(to_index(ids[i], m, line, "edge")));
            }
        }
        g.set_rotation(std::move(rot));
    }
    return g;
}

WeightedGraph read_graph_file(const std::string& path) {
    auto in = open_in(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u + 1 << ' ' << e.v + 1 << ' ';
        write_length(out, e.w);
        if (e.structural) {
            out << " s";
        }
        out << '\n';
    }
    if (g.has_rotation() && g.vertex_count() > 0) {
        const auto& rot = g.rotation();
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            out << "c rot " << v + 1;
            for (EdgeId e : rot[v]) {
                out << ' ' << e + 1;
            }
            out << '\n';
        }
    }
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
    auto out = open_out(path);
    write_graph(out, g);
}

TreeDecomposition read_tree_decomposition(std::istream& in, std::size_t* vertex_count) {
    std::string text;
    std::size_t line_no = 0;
    bool header = false;
    std::size_t bags = 0;
    std::size_t n = 0;
    TreeDecomposition td;
    std::vector<char> filled;
    while (std::getline(in, text)) {
        ++line_no;
        std::istringstream ls(text);
        std::string tok;
        if (!(ls >> tok) || tok == "c") {
            continue;
        }
        if (tok == "s") {
            std::string kind;
            std::size_t width_plus = 0;
            if (header || !(ls >> kind >> bags >> width_plus >> n)) {
                parse_error(line_no, "bad or repeated header");
            }
            header = true;
            td.bags.resize(bags);
            filled.assign(bags, 0);
            continue;
        }
        if (!header) {
            parse_error(line_no, "content before header");
        }
        if (tok == "b") {
            long long i = 0;
            if (!(ls >> i)) {
                parse_error(line_no, "bag line without an index");
            }
            std::size_t b = to_index(i, bags, line_no, "bag");
            if (filled[b]) {
                parse_error(line_no, "bag listed twice");
            }
            filled[b] = 1;
            long long v = 0;
            while (ls >> v) {
                td.bags[b].push_back(static_cast<VertexId>(to_index(v, n, line_no, "vertex")));
            }
            continue;
        }
        long long a = 0;
        long long b = 0;
        try {
            a = std::stoll(tok);
        } catch (const std::exception&) {
            parse_error(line_no, "expected a tree edge");
        }
        if (!(ls >> b)) {
            parse_error(line_no, "tree edge needs two bags");
        }
        td.tree_edges.emplace_back(to_index(a, bags, line_no, "bag"), to_index(b, bags, line_no, "bag"));
    }
    if (!header) {
        fail(ErrorKind::io, "missing \"s td\" header");
    }
    if (vertex_count) {
        *vertex_count = n;
    }
    return td;
}

TreeDecomposition read_tree_decomposition_file(const std::string& path, std::size_t* vertex_count) {
    auto in = open_in(path);
    return read_tree_decomposition(in, vertex_count);
}

void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td, std::size_t vertex_count) {
    std::size_t largest = 0;
    for (const auto& bag : td.bags) {
        largest = std::max(largest, bag.size());
    }
    out << "s td " << td.bags.size() << ' ' << largest << ' ' << vertex_count << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (VertexId v : td.bags[i]) {
            out << ' ' << v + 1;
        }
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) {
        out << a + 1 << ' ' << b + 1 << '\n';
    }
}

void write_tree_decomposition_file(const std::string& path, const TreeDecomposition& td, std::size_t vertex_count) {
    auto out = open_out(path);
    write_tree_decomposition(out, td, vertex_count);
}

void write_host_map(std::ostream& out, const OneToManyEmbedding& e, const std::vector<std::size_t>& copy_node) {
    for (VertexId v = 0; v < e.source_count(); ++v) {
        for (VertexId x : e.copies[v]) {
            long long node = x < copy_node.size() && copy_node[x] != kNoNode ? static_cast<long long>(copy_node[x]) : -1;
            out << v + 1 << ' ' << x + 1 << ' ' << node << '\n';
        }
    }
}

void write_host_map_file(const std::string& path, const OneToManyEmbedding& e,
                         const std::vector<std::size_t>& copy_node) {
    auto out = open_out(path);
    write_host_map(out, e, copy_node);
}

OneToManyEmbedding read_host_map(std::istream& in, WeightedGraph host, std::size_t source_count) {
    OneToManyEmbedding e;
    e.copies.resize(source_count);
    e.source_of.assign(host.vertex_count(), kNoVertex);
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        std::istringstream ls(text);
        long long s = 0;
        long long x = 0;
        if (!(ls >> s)) {
            continue;
        }
        if (!(ls >> x)) {
            parse_error(line_no, "map line needs a source and a host vertex");
        }
        auto src = static_cast<VertexId>(to_index(s, source_count, line_no, "source"));
        auto hv = static_cast<VertexId>(to_index(x, host.vertex_count(), line_no, "host"));
        if (e.source_of[hv] != kNoVertex) {
            parse_error(line_no, "host vertex mapped twice");
        }
        e.source_of[hv] = src;
        e.copies[src].push_back(hv);
    }
    for (std::size_t v = 0; v < source_count; ++v) {
        if (e.copies[v].empty()) {
            fail(ErrorKind::io, "source vertex " + std::to_string(v + 1) + " has no copy");
        }
    }
    for (VertexId x = 0; x < host.vertex_count(); ++x) {
        if (e.source_of[x] == kNoVertex) {
            fail(ErrorKind::io, "host vertex " + std::to_string(x + 1) + " is not mapped");
        }
    }
    e.host = std::move(host);
    return e;
}

OneToManyEmbedding read_host_map_file(const std::string& path, WeightedGraph host, std::size_t source_count) {
    auto in = open_in(path);
    return read_host_map(in, std::move(host), source_count);
}

std::vector<double> read_measure(std::istream& in, std::size_t vertex_count) {
    std::vector<double> mu(vertex_count, 0.0);
    std::vector<double> in_order;
    bool keyed = false;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        for (char& c : text) {
            if (c == ',' || c == ';' || c == '\t') {
                c = ' ';
            }
        }
        std::istringstream ls(text);
        std::vector<std::string> cols;
        std::string tok;
        while (ls >> tok) {
            cols.push_back(tok);
        }
        if (cols.empty()) {
            continue;
        }
        std::vector<double> vals;
        try {
            for (const auto& c : cols) {
                vals.push_back(std::stod(c));
            }
        } catch (const std::exception&) {
            if (line_no == 1) {
                continue;
            }
            parse_error(line_no, "non-numeric measure");
        }
        if (vals.size() >= 2) {
            keyed = true;
            std::size_t v = to_index(static_cast<long long>(vals[0]), vertex_count, line_no, "vertex");
            mu[v] = vals[1];
        } else {
            in_order.push_back(vals[0]);
        }
    }
    if (!keyed) {
        if (in_order.size() != vertex_count) {
            fail(ErrorKind::io, "measure file lists " + std::to_string(in_order.size()) + " values for " +
                                    std::to_string(vertex_count) + " vertices");
        }
        mu = std::move(in_order);
    }
    for (double m : mu) {
        if (!(m >= 0)) {
            fail(ErrorKind::io, "measures must be non-negative");
        }
    }
    return mu;
}

std::vector<double> read_measure_file(const std::string& path, std::size_t vertex_count) {
    auto in = open_in(path);
    return read_measure(in, vertex_count);
}

}  // namespace lowtw
