#include "jacpair/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace jacpair {

STuple::STuple(std::vector<Int> p) : parts(std::move(p)) {
    if (parts.size() < 2) throw std::invalid_argument("STuple: need at least two parts");
    for (const Int& s : parts)
        if (s < 1) throw std::invalid_argument("STuple: parts must be positive");
    std::sort(parts.begin(), parts.end());
}

Int STuple::complementary_sum() const {
    Int total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Int term = 1;
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (j != i) term *= parts[j];
        total += term;
    }
    return total;
}

Int STuple::product() const {
    Int p = 1;
    for (const Int& s : parts) p *= s;
    return p;
}

void Multigraph::add_edge(std::size_t u, std::size_t v, const Int& mult) {
    if (u == v) throw std::invalid_argument("add_edge: loops are not allowed");
    if (u >= n_ || v >= n_) throw std::invalid_argument("add_edge: vertex index out of range");
    if (mult < 1) throw std::invalid_argument("add_edge: multiplicity must be positive");
    if (u > v) std::swap(u, v);
    for (EdgeRecord& e : edges_)
        if (e.u == u && e.v == v) {
            e.mult += mult;
            return;
        }
    edges_.push_back({u, v, mult});
}

Int Multigraph::multiplicity(std::size_t u, std::size_t v) const {
    if (u > v) std::swap(u, v);
    for (const EdgeRecord& e : edges_)
        if (e.u == u && e.v == v) return e.mult;
    return 0;
}

Int Multigraph::valence(std::size_t v) const {
    Int d = 0;
    for (const EdgeRecord& e : edges_)
        if (e.u == v || e.v == v) d += e.mult;
    return d;
}

Int Multigraph::total_multiplicity() const {
    Int t = 0;
    for (const EdgeRecord& e : edges_) t += e.mult;
    return t;
}

std::vector<std::size_t> Multigraph::neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (const EdgeRecord& e : edges_) {
        if (e.u == v) out.push_back(e.v);
        else if (e.v == v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Multigraph::connected() const {
    if (n_ == 0) return false;
    std::vector<char> seen(n_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

IntMatrix Multigraph::laplacian() const {
    IntMatrix l(n_, n_);
    for (const EdgeRecord& e : edges_) {
        l(e.u, e.u) += e.mult;
        l(e.v, e.v) += e.mult;
        l(e.u, e.v) -= e.mult;
        l(e.v, e.u) -= e.mult;
    }
    return l;
}

IntMatrix Multigraph::reduced_laplacian(std::size_t base) const {
    if (base >= n_) throw std::invalid_argument("reduced_laplacian: base out of range");
    if (n_ < 2) throw std::invalid_argument("reduced_laplacian: need at least two vertices");
    IntMatrix full = laplacian();
    IntMatrix r(n_ - 1, n_ - 1);
    for (std::size_t i = 0, ri = 0; i < n_; ++i) {
        if (i == base) continue;
        for (std::size_t j = 0, rj = 0; j < n_; ++j) {
            if (j == base) continue;
            r(ri, rj) = full(i, j);
            ++rj;
        }
        ++ri;
    }
    return r;
}

std::vector<EdgeRecord> Multigraph::sorted_edges() const {
    std::vector<EdgeRecord> out = edges_;
    std::sort(out.begin(), out.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    return out;
}

bool Multigraph::operator==(const Multigraph& o) const {
    return n_ == o.n_ && sorted_edges() == o.sorted_edges();
}

// ---- constructions ----

Multigraph cycle_graph(std::size_t n) {
    if (n < 2) throw std::invalid_argument("cycle: need n >= 2 (a 1-cycle would be a loop)");
    Multigraph g(n);
    if (n == 2) {
        g.add_edge(0, 1, 2);
        return g;
    }
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Multigraph banana_graph(const Int& m) {
    if (m < 1) throw std::invalid_argument("banana: need m >= 1");
    Multigraph g(2);
    g.add_edge(0, 1, m);
    return g;
}

Multigraph subdivided_banana(const STuple& s) {
    Int vertex_count = 2;
    for (const Int& si : s.parts) vertex_count += si - 1;
    if (vertex_count > 5'000'000)
        throw std::invalid_argument("subdivided_banana: strand lengths too large to materialize");
    Multigraph g(static_cast<std::size_t>(vertex_count));
    std::size_t next = 2;
    for (const Int& si : s.parts) {
        std::size_t len = static_cast<std::size_t>(si);
        if (len == 1) {
            g.add_edge(0, 1);
            continue;
        }
        std::size_t prev = 0;
        for (std::size_t k = 0; k + 1 < len; ++k) {
            g.add_edge(prev, next);
            prev = next++;
        }
        g.add_edge(prev, 1);
    }
    return g;
}

Multigraph multicycle(const STuple& s) {
    std::size_t m = s.size();
    Multigraph g(m);
    for (std::size_t i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m, s.parts[i]);
    return g;
}

Multigraph complete_graph(std::size_t n) {
    if (n < 2) throw std::invalid_argument("complete: need n >= 2");
    Multigraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Multigraph wedge(const Multigraph& g1, const Multigraph& g2, std::size_t v1, std::size_t v2) {
    if (v1 >= g1.vertex_count() || v2 >= g2.vertex_count())
        throw std::invalid_argument("wedge: identification vertex out of range");
    Multigraph g(g1.vertex_count() + g2.vertex_count() - 1);
    for (const EdgeRecord& e : g1.edges()) g.add_edge(e.u, e.v, e.mult);
    for (const EdgeRecord& e : g2.edges())
        g.add_edge(wedge_vertex_of_second(g1, v1, v2, e.u),
                   wedge_vertex_of_second(g1, v1, v2, e.v), e.mult);
    return g;
}

std::size_t wedge_vertex_of_second(const Multigraph& g1, std::size_t v1, std::size_t v2,
                                   std::size_t w) {
    if (w == v2) return v1;
    return g1.vertex_count() + (w < v2 ? w : w - 1);
}

Multigraph doubled_tree(const std::vector<std::pair<std::size_t, std::size_t>>& tree_edges,
                        const std::vector<std::pair<std::size_t, std::size_t>>& doubled) {
    std::size_t n = tree_edges.size() + 1;
    auto norm = [](std::pair<std::size_t, std::size_t> e) {
        if (e.first > e.second) std::swap(e.first, e.second);
        return e;
    };
    Multigraph g(n);
    for (auto e : tree_edges) {
        e = norm(e);
        bool twice = false;
        for (auto d : doubled)
            if (norm(d) == e) twice = true;
        g.add_edge(e.first, e.second, twice ? 2 : 1);
    }
    for (auto d : doubled) {
        d = norm(d);
        bool in_tree = false;
        for (auto e : tree_edges)
            if (norm(e) == d) in_tree = true;
        if (!in_tree) throw std::invalid_argument("doubled_tree: doubled edge not in tree");
    }
    if (!g.connected() || g.total_multiplicity() != Int(tree_edges.size()) + Int(doubled.size()))
        throw std::invalid_argument("doubled_tree: edge list is not a tree");
    return g;
}

// ---- statistics ----

namespace {

// Articulation points / bridges on the underlying structure; an edge with
// multiplicity >= 2 is never a bridge and parallel edges keep a pair biconnected.
struct DfsState {
    const Multigraph& g;
    std::vector<int> disc, low;
    int timer = 0;
    bool has_cut = false;
    bool has_bridge = false;

    explicit DfsState(const Multigraph& g_) : g(g_), disc(g_.vertex_count(), -1), low(g_.vertex_count(), -1) {}

    void run(std::size_t u, std::size_t parent, bool parent_multi, bool is_root) {
        disc[u] = low[u] = timer++;
        int children = 0;
        for (std::size_t w : g.neighbors(u)) {
            if (w == parent && !parent_multi) continue;
            if (disc[w] == -1) {
                ++children;
                run(w, u, g.multiplicity(u, w) >= 2, false);
                low[u] = std::min(low[u], low[w]);
                if (!is_root && low[w] >= disc[u]) has_cut = true;
                if (low[w] > disc[u] && g.multiplicity(u, w) < 2) has_bridge = true;
            } else {
                low[u] = std::min(low[u], disc[w]);
            }
        }
        if (is_root && children > 1) has_cut = true;
    }
};

} // namespace

GraphStats stats(const Multigraph& g) {
    if (!g.connected()) throw std::invalid_argument("stats: graph must be connected");
    GraphStats st;
    st.genus = g.total_multiplicity() - Int(g.vertex_count()) + 1;
    st.max_valence = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) st.max_valence = std::max(st.max_valence, g.valence(v));
    DfsState dfs(g);
    dfs.run(0, 0, false, true);
    st.biconnected = !dfs.has_cut;
    st.two_edge_connected = !dfs.has_bridge;
    return st;
}

Int spanning_tree_count(const Multigraph& g) {
    if (!g.connected()) throw std::invalid_argument("spanning_tree_count: graph must be connected");
    if (g.vertex_count() == 1) return 1;
    SnfResult snf = smith_normal_form(g.reduced_laplacian(0));
    Int det = 1;
    for (std::size_t i = 0; i < snf.S.rows(); ++i) det *= snf.S(i, i);
    return det; // SNF diagonal is nonnegative; Laplacian minors are positive
}

// ---- text format ----

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
    throw std::invalid_argument("graph parse error at line " + std::to_string(line_no) + ": " + msg);
}

} // namespace

Multigraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::size_t n = 0, k = 0;
    bool header_seen = false;
    std::vector<EdgeRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        if (!header_seen) {
            if (!(ls >> n)) {
                std::string junk;
                if (ls.clear(), ls >> junk) parse_fail(line_no, "malformed header");
                continue; // blank / comment line before header
            }
            if (!(ls >> k)) parse_fail(line_no, "malformed header, expected \"n k\"");
            std::string junk;
            if (ls >> junk) parse_fail(line_no, "trailing tokens after header");
            if (n == 0) parse_fail(line_no, "vertex count must be positive");
            header_seen = true;
            continue;
        }
        long long u, v;
        Int mult;
        if (!(ls >> u)) {
            std::string junk;
            if (ls.clear(), ls >> junk) parse_fail(line_no, "malformed edge record");
            continue;
        }
        if (!(ls >> v >> mult)) parse_fail(line_no, "malformed edge record, expected \"u v mult\"");
        std::string junk;
        if (ls >> junk) parse_fail(line_no, "trailing tokens after edge record");
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            parse_fail(line_no, "vertex index out of range");
        if (u == v) parse_fail(line_no, "loops are not allowed");
        if (u > v) parse_fail(line_no, "edge record requires u < v");
        if (mult < 1) parse_fail(line_no, "multiplicity must be positive");
        for (const EdgeRecord& e : records)
            if (e.u == static_cast<std::size_t>(u) && e.v == static_cast<std::size_t>(v))
                parse_fail(line_no, "duplicate record for this vertex pair");
        records.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), mult});
    }
    if (!header_seen) throw std::invalid_argument("graph parse error: missing header line");
    if (records.size() != k)
        throw std::invalid_argument("graph parse error: header announced " + std::to_string(k) +
                                    " edge records, found " + std::to_string(records.size()));
    Multigraph g(n);
    for (const EdgeRecord& e : records) g.add_edge(e.u, e.v, e.mult);
    return g;
}

std::string emit_graph(const Multigraph& g) {
    std::ostringstream out;
    std::vector<EdgeRecord> es = g.sorted_edges();
    out << g.vertex_count() << ' ' << es.size() << '\n';
    for (const EdgeRecord& e : es) out << e.u << ' ' << e.v << ' ' << e.mult << '\n';
    return out.str();
}

// ---- canonical labeling ----

namespace {

// Lexicographically greatest adjacency encoding over all vertex orders,
// by branch and bound. Fine for the small graphs handled here.
struct CanonSearch {
    const Multigraph& g;
    std::size_t n;
    std::vector<std::vector<Int>> adj;
    std::vector<std::size_t> perm, best_perm;
    std::vector<Int> current, best;
    bool have_best = false;

    explicit CanonSearch(const Multigraph& g_) : g(g_), n(g_.vertex_count()) {
        adj.assign(n, std::vector<Int>(n, 0));
        for (const EdgeRecord& e : g.edges()) {
            adj[e.u][e.v] = e.mult;
            adj[e.v][e.u] = e.mult;
        }
    }

    void dfs(std::size_t depth, std::vector<char>& used) {
        if (depth == n) {
            if (!have_best || current > best) {
                best = current;
                best_perm = perm;
                have_best = true;
            }
            return;
        }
        std::size_t prefix = current.size();
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            for (std::size_t i = 0; i < depth; ++i) current.push_back(adj[perm[i]][v]);
            // Prune only when the whole prefix is already lexicographically
            // below the incumbent; a strictly greater prefix must be explored.
            bool viable = true;
            if (have_best) {
                for (std::size_t i = 0; i < current.size(); ++i) {
                    if (current[i] != best[i]) {
                        viable = current[i] > best[i];
                        break;
                    }
                }
            }
            if (viable) {
                used[v] = 1;
                perm.push_back(v);
                dfs(depth + 1, used);
                perm.pop_back();
                used[v] = 0;
            }
            current.resize(prefix);
        }
    }

    std::vector<std::size_t> run() {
        if (n > 24) throw std::invalid_argument("canonical_form: graph too large");
        std::vector<char> used(n, 0);
        dfs(0, used);
        return best_perm; // best_perm[position] = original vertex
    }
};

} // namespace

Multigraph canonical_form(const Multigraph& g) {
    if (g.vertex_count() == 0) return g;
    CanonSearch search(g);
    std::vector<std::size_t> perm = search.run();
    std::vector<std::size_t> pos(g.vertex_count());
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
    Multigraph out(g.vertex_count());
    for (const EdgeRecord& e : g.edges()) out.add_edge(pos[e.u], pos[e.v], e.mult);
    return out;
}

std::string canonical_key(const Multigraph& g) {
    Multigraph c = canonical_form(g);
    std::ostringstream out;
    out << c.vertex_count() << ':';
    for (const EdgeRecord& e : c.sorted_edges()) out << e.u << ',' << e.v << ',' << e.mult << ';';
    return out.str();
}

} // namespace jacpair
