#include "jacpair/atlas.hpp"

#include "jacpair/numtheory.hpp"
#include "jacpair/pairing.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace jacpair {

namespace {

// A homeomorphically reduced skeleton: every valence >= 3, loops and parallel
// strands allowed. Each strand gets subdivided into a path of length >= 1.
struct Strand {
    std::size_t u, v; // u == v for a loop
};

struct Skeleton {
    std::size_t n = 0;
    std::vector<Strand> strands; // parallel strands adjacent in the list
};

// Serialization matching canonical_key for a graph already in canonical form.
std::string graph_key(const Multigraph& canon) {
    std::ostringstream out;
    out << canon.vertex_count() << ':';
    for (const EdgeRecord& e : canon.sorted_edges()) out << e.u << ',' << e.v << ',' << e.mult << ';';
    return out.str();
}

// The canonical labeling of C_n (lexicographically greatest adjacency
// encoding) walks outward from one vertex in both directions: 0 adjacent to 1
// and 2, then i adjacent to i+2, closing at the far end. Spelled out here so
// long cycles bypass the general search; the tests pin it against
// canonical_form for small n.
Multigraph canonical_cycle(std::size_t n) {
    Multigraph g(n);
    if (n == 1) return g;
    if (n == 2) {
        g.add_edge(0, 1, 2);
        return g;
    }
    g.add_edge(0, 1, 1);
    g.add_edge(0, 2, 1);
    for (std::size_t i = 1; i + 3 <= n; ++i) g.add_edge(i, i + 2, 1);
    g.add_edge(n - 2, n - 1, 1);
    return g;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// Spanning trees of the skeleton as strand-index bitmasks (loops never qualify).
std::vector<std::uint32_t> spanning_tree_masks(const Skeleton& s) {
    std::vector<std::size_t> nonloop;
    for (std::size_t i = 0; i < s.strands.size(); ++i)
        if (s.strands[i].u != s.strands[i].v) nonloop.push_back(i);
    std::vector<std::uint32_t> out;
    if (s.n == 1) {
        out.push_back(0);
        return out;
    }
    std::size_t need = s.n - 1;
    if (nonloop.size() < need) return out;
    std::vector<std::size_t> pick(need);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        UnionFind uf(s.n);
        bool acyclic = true;
        for (std::size_t t = 0; t < need && acyclic; ++t) {
            const Strand& e = s.strands[nonloop[pick[t]]];
            acyclic = uf.unite(e.u, e.v);
        }
        if (acyclic) {
            std::uint32_t mask = 0;
            for (std::size_t t = 0; t < need; ++t) mask |= std::uint32_t(1) << nonloop[pick[t]];
            out.push_back(mask);
        }
        // next combination
        std::size_t i = need;
        while (i > 0 && pick[i - 1] == nonloop.size() - need + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

// tau of the subdivided graph: sum over skeleton trees of the product of the
// path lengths of the strands outside the tree.
Int subdivided_tree_count(const std::vector<std::uint32_t>& trees, const std::vector<Int>& len) {
    Int total = 0;
    for (std::uint32_t t : trees) {
        Int prod = 1;
        for (std::size_t i = 0; i < len.size(); ++i)
            if (!(t >> i & 1)) prod *= len[i];
        total += prod;
    }
    return total;
}

Multigraph subdivide(const Skeleton& s, const std::vector<Int>& len) {
    std::size_t extra = 0;
    for (const Int& l : len) extra += static_cast<std::size_t>(l - 1);
    Multigraph g(s.n + extra);
    std::size_t next = s.n;
    for (std::size_t i = 0; i < s.strands.size(); ++i) {
        std::size_t prev = s.strands[i].u;
        for (Int step = 1; step < len[i]; ++step) {
            g.add_edge(prev, next, 1);
            prev = next++;
        }
        g.add_edge(prev, s.strands[i].v, 1);
    }
    return g;
}

// Minimal subdividable length per strand: loops need 3 (two shorter choices
// collapse to a loop or a doubled edge), the second and later strands of a
// parallel class need 2, everything else 1. Within a class lengths are kept
// non-decreasing to cut symmetric assignments.
std::vector<Int> strand_minimums(const Skeleton& s) {
    std::vector<Int> mins(s.strands.size(), 1);
    for (std::size_t i = 0; i < s.strands.size(); ++i) {
        if (s.strands[i].u == s.strands[i].v)
            mins[i] = 3;
        else if (i > 0 && s.strands[i].u == s.strands[i - 1].u && s.strands[i].v == s.strands[i - 1].v)
            mins[i] = 2;
    }
    return mins;
}

bool same_class(const Skeleton& s, std::size_t i, std::size_t j) {
    return s.strands[i].u == s.strands[j].u && s.strands[i].v == s.strands[j].v;
}

void assign_lengths(const Skeleton& s, const std::vector<std::uint32_t>& trees,
                    const std::vector<Int>& mins, std::vector<Int>& len, std::size_t i,
                    const Int& max_trees, std::map<std::string, Multigraph>& found) {
    if (i == len.size()) {
        Multigraph g = canonical_form(subdivide(s, len));
        found.emplace(graph_key(g), g);
        return;
    }
    Int low = mins[i];
    if (i > 0 && same_class(s, i, i - 1) && len[i - 1] > low) low = len[i - 1];
    for (Int l = low;; ++l) {
        len[i] = l;
        for (std::size_t j = i + 1; j < len.size(); ++j) {
            len[j] = mins[j];
            if (same_class(s, j, i) && len[j] < l) len[j] = l;
        }
        if (subdivided_tree_count(trees, len) > max_trees) break; // tau grows with each length
        assign_lengths(s, trees, mins, len, i + 1, max_trees, found);
    }
    len[i] = mins[i];
}

// Lower bound on tau over all valid subdivisions: skeleton tree count (loops
// removed) times 3 per loop.
Int skeleton_tau_floor(const Skeleton& s) {
    Multigraph g(s.n);
    Int loops = 1;
    for (const Strand& e : s.strands) {
        if (e.u == e.v)
            loops *= 3;
        else
            g.add_edge(e.u, e.v, 1);
    }
    if (!g.connected()) return 0; // callers only pass connected skeletons
    return spanning_tree_count(g) * loops;
}

struct SkeletonSearch {
    std::size_t n;
    std::size_t m_max;
    const Int& max_trees;
    std::map<std::string, Multigraph>& found;

    std::vector<std::vector<unsigned>> mult; // mult[i][j], i < j
    std::vector<unsigned> loops;
    std::vector<unsigned> deg;
    std::size_t edges = 0;

    void finish() {
        // connectivity over non-loop edges, then bridgelessness
        UnionFind uf(n);
        std::size_t comps = n;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (mult[i][j] > 0 && uf.unite(i, j)) --comps;
        if (comps != 1) return;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (mult[i][j] != 1) continue;
                UnionFind cut(n);
                std::size_t c = n;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = a + 1; b < n; ++b)
                        if (mult[a][b] > 0 && !(a == i && b == j) && cut.unite(a, b)) --c;
                if (c != 1) return; // bridge
            }

        Skeleton s;
        s.n = n;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned l = 0; l < loops[i]; ++l) s.strands.push_back({i, i});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (unsigned l = 0; l < mult[i][j]; ++l) s.strands.push_back({i, j});
        if (skeleton_tau_floor(s) > max_trees) return;

        std::vector<std::uint32_t> trees = spanning_tree_masks(s);
        std::vector<Int> mins = strand_minimums(s);
        if (subdivided_tree_count(trees, mins) > max_trees) return;
        std::vector<Int> len = mins;
        assign_lengths(s, trees, mins, len, 0, max_trees, found);
    }

    // Distribute vertex i's remaining degree over loops and forward neighbors.
    void vertex(std::size_t i) {
        if (i == n) {
            finish();
            return;
        }
        forward(i, i + 1);
    }

    void feasible_then_next(std::size_t i) {
        if (deg[i] < 3) return;
        std::size_t deficit = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (deg[j] < 3) deficit += 3 - deg[j];
        if (deficit > 2 * (m_max - edges)) return;
        vertex(i + 1);
    }

    void forward(std::size_t i, std::size_t j) {
        if (j == n) {
            // loops at i last; each loop adds one edge and two to the valence
            for (unsigned l = 0;; ++l) {
                if (edges + l > m_max) break;
                loops[i] = l;
                deg[i] += 2 * l;
                edges += l;
                feasible_then_next(i);
                deg[i] -= 2 * l;
                edges -= l;
                loops[i] = 0;
            }
            return;
        }
        for (unsigned k = 0; edges + k <= m_max; ++k) {
            mult[i][j] = k;
            deg[i] += k;
            deg[j] += k;
            edges += k;
            forward(i, j + 1);
            deg[i] -= k;
            deg[j] -= k;
            edges -= k;
            mult[i][j] = 0;
        }
    }
};

} // namespace

std::vector<Multigraph> enumerate_2ec(const Int& max_trees) {
    if (max_trees < 3) throw std::invalid_argument("enumerate_2ec: max_trees must be >= 3");
    if (max_trees > 32)
        throw std::invalid_argument("enumerate_2ec: bounds beyond 32 spanning trees are unsupported");

    // Any non-cycle candidate contracts to a skeleton with every valence >= 3,
    // so 3n <= 2m = 2(n + g - 1) bounds the skeleton by its genus; the sparsest
    // genus-g simple graphs (subdivided thetas, loop roses, wedges of those)
    // all have tau >= 2^(g+1), so genus is capped at log2(max_trees) with a
    // margin of one on top.
    unsigned g_cap = 1;
    while (pow_int(2, g_cap + 1) <= max_trees) ++g_cap;
    ++g_cap;

    std::map<std::string, Multigraph> found;
    for (Int n = 3; n <= max_trees; ++n) {
        Multigraph c = canonical_cycle(static_cast<std::size_t>(n));
        found.emplace(graph_key(c), c);
    }
    // loop roses (single-vertex skeletons)
    for (unsigned k = 2; k <= g_cap; ++k) {
        Skeleton s;
        s.n = 1;
        for (unsigned l = 0; l < k; ++l) s.strands.push_back({0, 0});
        if (skeleton_tau_floor(s) > max_trees) continue;
        std::vector<std::uint32_t> trees = spanning_tree_masks(s);
        std::vector<Int> mins = strand_minimums(s);
        if (subdivided_tree_count(trees, mins) > max_trees) continue;
        std::vector<Int> len = mins;
        assign_lengths(s, trees, mins, len, 0, max_trees, found);
    }
    for (std::size_t n = 2; n + 2 <= 2 * static_cast<std::size_t>(g_cap); ++n) {
        SkeletonSearch search{n, n + g_cap - 1, max_trees, found,
                              std::vector<std::vector<unsigned>>(n, std::vector<unsigned>(n, 0)),
                              std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0), 0};
        search.vertex(0);
    }

    std::vector<std::tuple<Int, std::size_t, std::string, Multigraph>> keyed;
    for (const auto& [key, g] : found)
        keyed.emplace_back(spanning_tree_count(g), g.vertex_count(), key, g);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return std::get<2>(a) < std::get<2>(b);
    });
    std::vector<Multigraph> out;
    for (const auto& entry : keyed) out.push_back(std::get<3>(entry));
    return out;
}

std::vector<CensusRecord> census(const Int& max_trees, unsigned jobs) {
    std::vector<Multigraph> graphs = enumerate_2ec(max_trees);
    std::vector<CensusRecord> records(graphs.size());
    auto fill = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < graphs.size(); i += step) {
            JacobianPresentation j = jacobian(graphs[i], 0);
            records[i].canonical_graph = graphs[i];
            records[i].tree_count = spanning_tree_count(graphs[i]);
            records[i].invariant_factors = j.invariant_factors;
            records[i].pairing_class = classify(gram_matrix(j)).text();
        }
    };
    if (jobs <= 1) {
        fill(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w) workers.emplace_back(fill, w, jobs);
        for (std::thread& t : workers) t.join();
    }
    return records;
}

namespace {

// Multiset of prime powers of a factor list, as a sorted vector.
std::vector<Int> prime_power_parts(const std::vector<Int>& factors) {
    std::vector<Int> parts;
    for (const Int& f : factors) {
        if (f < 1) throw std::invalid_argument("check_absence: factors must be positive");
        if (f == 1) continue;
        for (const auto& [p, e] : factorize(f)) parts.push_back(pow_int(p, e));
    }
    std::sort(parts.begin(), parts.end());
    return parts;
}

std::string multiset_key(const std::vector<Int>& parts) {
    std::string s;
    for (const Int& x : parts) {
        s += x.str();
        s += ',';
    }
    return s;
}

// remaining minus record parts, or nullopt if not a sub-multiset
std::optional<std::vector<Int>> subtract(const std::vector<Int>& remaining,
                                         const std::vector<Int>& parts) {
    std::vector<Int> rest;
    std::size_t j = 0;
    for (const Int& x : remaining) {
        if (j < parts.size() && parts[j] == x)
            ++j;
        else
            rest.push_back(x);
    }
    if (j != parts.size()) return std::nullopt;
    return rest;
}

struct CoverSearch {
    const std::vector<CensusRecord>& records;
    std::vector<std::vector<Int>> record_parts;
    std::set<std::string> dead;

    bool cover(const std::vector<Int>& remaining, std::vector<std::size_t>& chosen) {
        if (remaining.empty()) return true;
        std::string key = multiset_key(remaining);
        if (dead.count(key)) return false;
        for (std::size_t i = 0; i < records.size(); ++i) {
            auto rest = subtract(remaining, record_parts[i]);
            if (!rest) continue;
            chosen.push_back(i);
            if (cover(*rest, chosen)) return true;
            chosen.pop_back();
        }
        dead.insert(key);
        return false;
    }
};

std::string factors_text(const std::vector<Int>& factors) {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += ",";
        s += factors[i].str();
    }
    return s;
}

} // namespace

AbsenceVerdict check_absence(const std::vector<Int>& factors, const Int& max_trees,
                             const std::vector<CensusRecord>& records) {
    std::vector<Int> target = prime_power_parts(factors);
    Int order = 1;
    for (const Int& x : target) order *= x;
    if (order > max_trees)
        throw std::invalid_argument(
            "check_absence: target order " + order.str() + " exceeds the census bound " +
            max_trees.str() + "; the census cannot be conclusive");

    CoverSearch search{records, {}, {}};
    for (const CensusRecord& r : records)
        search.record_parts.push_back(prime_power_parts(r.invariant_factors));

    AbsenceVerdict verdict;
    std::vector<std::size_t> chosen;
    if (!search.cover(target, chosen)) return verdict;
    verdict.present = true;
    if (chosen.empty()) {
        verdict.parts.push_back("1 (trivial)");
        return verdict;
    }
    verdict.witness = records[chosen[0]].canonical_graph;
    verdict.parts.push_back(factors_text(records[chosen[0]].invariant_factors));
    for (std::size_t t = 1; t < chosen.size(); ++t) {
        verdict.witness = wedge(verdict.witness, records[chosen[t]].canonical_graph, 0, 0);
        verdict.parts.push_back(factors_text(records[chosen[t]].invariant_factors));
    }
    return verdict;
}

std::string census_tsv(const std::vector<CensusRecord>& records) {
    std::ostringstream out;
    out << "trees\tn\tfactors\tclass\tedges\n";
    for (const CensusRecord& r : records) {
        std::string edges = emit_graph(r.canonical_graph);
        std::replace(edges.begin(), edges.end(), '\n', ';');
        out << r.tree_count << '\t' << r.canonical_graph.vertex_count() << '\t'
            << factors_text(r.invariant_factors) << '\t' << r.pairing_class << '\t' << edges
            << '\n';
    }
    return out.str();
}

void write_census_tsv(const std::vector<CensusRecord>& records, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot open " + tmp + " for writing");
        out << census_tsv(records);
        if (!out.flush()) throw std::invalid_argument("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::invalid_argument("cannot rename " + tmp + " to " + path);
}

} // namespace jacpair
