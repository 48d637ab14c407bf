#ifndef JACPAIR_GRAPH_HPP
#define JACPAIR_GRAPH_HPP

#include "jacpair/ints.hpp"
#include "jacpair/matrix.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace jacpair {

/// One undirected edge record: u < v, multiplicity >= 1.
struct EdgeRecord {
    std::size_t u, v;
    Int mult;
    bool operator==(const EdgeRecord&) const = default;
};

/// Tuple (s_1,...,s_m) of strand lengths / multiplicities, kept sorted ascending.
struct STuple {
    std::vector<Int> parts;

    explicit STuple(std::vector<Int> p);
    std::size_t size() const { return parts.size(); }

    /// sum_i prod_{j != i} s_j  (tree count of B_s, order of its Jacobian)
    Int complementary_sum() const;
    Int product() const;
};

/// Loopless undirected multigraph. At most one record per unordered pair.
class Multigraph {
public:
    explicit Multigraph(std::size_t vertex_count) : n_(vertex_count) {}

    std::size_t vertex_count() const { return n_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }

    /// Adds mult to the multiplicity of {u, v}. Rejects loops and bad indices.
    void add_edge(std::size_t u, std::size_t v, const Int& mult = 1);

    Int multiplicity(std::size_t u, std::size_t v) const;
    Int valence(std::size_t v) const;
    Int total_multiplicity() const;

    bool connected() const;
    std::vector<std::size_t> neighbors(std::size_t v) const;

    /// Full combinatorial Laplacian (valences on the diagonal).
    IntMatrix laplacian() const;
    /// Laplacian with the base row and column deleted. Vertex i > base maps to row i-1.
    IntMatrix reduced_laplacian(std::size_t base) const;

    /// Canonically sorted edge records.
    std::vector<EdgeRecord> sorted_edges() const;

    bool operator==(const Multigraph& o) const;

private:
    std::size_t n_;
    std::vector<EdgeRecord> edges_;
};

// ---- constructions ----

Multigraph cycle_graph(std::size_t n);
Multigraph banana_graph(const Int& m);
/// Hubs at vertices 0 and 1; strand i contributes s_i - 1 internal vertices, in strand order.
Multigraph subdivided_banana(const STuple& s);
/// m vertices 0..m-1; s_i edges between v_{i-1} and v_i (cyclically).
Multigraph multicycle(const STuple& s);
Multigraph complete_graph(std::size_t n);
/// Glue v2 of g2 onto v1 of g1. Vertices of g1 keep their indices.
Multigraph wedge(const Multigraph& g1, const Multigraph& g2, std::size_t v1, std::size_t v2);
/// Index of g2's vertex w inside wedge(g1, g2, v1, v2).
std::size_t wedge_vertex_of_second(const Multigraph& g1, std::size_t v1, std::size_t v2, std::size_t w);
/// Tree given by its edge list; edges listed in `doubled` get multiplicity 2.
Multigraph doubled_tree(const std::vector<std::pair<std::size_t, std::size_t>>& tree_edges,
                        const std::vector<std::pair<std::size_t, std::size_t>>& doubled);

// ---- statistics ----

struct GraphStats {
    Int genus;        // e - n + 1, edges counted with multiplicity
    Int max_valence;  // delta
    bool biconnected;
    bool two_edge_connected;
};

GraphStats stats(const Multigraph& g);

/// Kirchhoff count via the reduced-Laplacian determinant. Rejects disconnected input.
Int spanning_tree_count(const Multigraph& g);

// ---- text format ----

Multigraph parse_graph(const std::string& text);
std::string emit_graph(const Multigraph& g);

// ---- isomorphism (small graphs) ----

/// Canonical key: relabeling-invariant encoding of (n, sorted edge list).
std::string canonical_key(const Multigraph& g);
Multigraph canonical_form(const Multigraph& g);

} // namespace jacpair

#endif
