#ifndef JACPAIR_ATLAS_HPP
#define JACPAIR_ATLAS_HPP

#include "jacpair/graph.hpp"
#include "jacpair/ints.hpp"

#include <string>
#include <vector>

namespace jacpair {

/// One census entry: a 2-edge-connected simple graph with its Jacobian data.
struct CensusRecord {
    Multigraph canonical_graph{1};
    Int tree_count;
    std::vector<Int> invariant_factors; // d1 | d2 | ...
    std::string pairing_class;          // canonical decomposition text
};

/// All 2-edge-connected simple graphs with at most max_trees spanning trees,
/// one canonical representative per isomorphism class, deterministic order
/// (tree count, then vertex count, then canonical edge list).
std::vector<Multigraph> enumerate_2ec(const Int& max_trees);

/// Jacobian + classification for every enumerated graph, in the same order.
std::vector<CensusRecord> census(const Int& max_trees, unsigned jobs = 1);

struct AbsenceVerdict {
    bool present = false;
    Multigraph witness{1};             // wedge of census graphs when present
    std::vector<std::string> parts;    // invariant factors carried by each summand
};

/// Is some simple graph's Jacobian isomorphic to the group with the given
/// invariant factors? Reasons over wedge decompositions: a simple graph is a
/// bridge-joined union of 2-edge-connected simple blocks, and Jacobians add
/// over blocks, so the verdict reduces to covering the target by census groups.
AbsenceVerdict check_absence(const std::vector<Int>& factors, const Int& max_trees,
                             const std::vector<CensusRecord>& records);

std::string census_tsv(const std::vector<CensusRecord>& records);

/// Atomic write (temp file + rename).
void write_census_tsv(const std::vector<CensusRecord>& records, const std::string& path);

} // namespace jacpair

#endif
