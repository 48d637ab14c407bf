#ifndef JACPAIR_REALIZE_HPP
#define JACPAIR_REALIZE_HPP

#include "jacpair/graph.hpp"
#include "jacpair/pairing.hpp"

#include <string>
#include <vector>

namespace jacpair {

struct RealizationSpec {
    PairingDecomposition decomposition;
    Int q_bound_multiplier = 1; // scales the 2*p^{r/2} bound of the q-search
};

/// Parses the canonical decomposition grammar, enforcing the r-constraints.
RealizationSpec parse_spec(const std::string& text);

struct RealizedGraph {
    Multigraph graph{1};
    std::vector<std::string> block_notes; // one construction note per block, in block order
};

/// Builds a graph whose Jacobian-with-pairing classifies exactly as the spec.
/// Every result is verified before it is returned. E blocks (and F blocks with
/// r != 2) raise Unrealizable; a failed q-search raises NoWitness.
RealizedGraph realize(const RealizationSpec& spec);

/// classify(gram_matrix(jacobian(G))) == spec.decomposition; mismatch detail in *diff.
bool verify_realization(const Multigraph& g, const RealizationSpec& spec,
                        std::string* diff = nullptr);

} // namespace jacpair

#endif
