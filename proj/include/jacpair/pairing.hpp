#ifndef JACPAIR_PAIRING_HPP
#define JACPAIR_PAIRING_HPP

#include "jacpair/divisor.hpp"
#include "jacpair/graph.hpp"
#include "jacpair/ints.hpp"
#include "jacpair/matrix.hpp"

#include <string>
#include <vector>

namespace jacpair {

/// Jac(G) = Z/d1 x ... x Z/dk with explicit divisor generators and a
/// coordinate map coming from the Smith form of the reduced Laplacian.
struct JacobianPresentation {
    Multigraph graph;
    std::size_t base_vertex = 0;
    std::vector<Int> invariant_factors; // d1 | d2 | ..., each > 1
    std::vector<Divisor> generators;    // degree-0 divisors, class_order(g_i) = d_i

    // coordinate machinery: coords(D) = (U * D_restricted)[kept] mod d
    IntMatrix U;
    std::vector<Int> snf_diagonal;
    std::vector<std::size_t> kept_indices;

    /// Coordinates of a degree-0 divisor class, mod (d1,...,dk).
    std::vector<Int> to_coords(const Divisor& d) const;
};

JacobianPresentation jacobian(const Multigraph& g, std::size_t base = 0);

/// <D1, D2> in Q/Z, normalized to [0,1).
Rat monodromy_pairing(const Multigraph& g, const Divisor& d1, const Divisor& d2);

/// Finite abelian group with a Q/Z-valued symmetric pairing on its generators.
struct GroupWithPairing {
    std::vector<Int> generator_orders;       // each > 1 (divisibility not required)
    std::vector<std::vector<Rat>> gram;      // symmetric, entries in [0,1)

    Int order() const;
    /// Invariant factors d1 | d2 | ... of the underlying group.
    std::vector<Int> invariant_factors() const;
};

GroupWithPairing gram_matrix(const JacobianPresentation& j);

// ---- classification into the canonical indecomposable blocks ----

struct PairingBlock {
    enum class Kind { OddCyclic, TwoCyclic, Exceptional };
    Kind kind;
    Int p;              // odd prime for OddCyclic, 2 otherwise
    unsigned r;         // exponent >= 1
    bool residue = false; // OddCyclic: Legendre(numerator | p) = +1
    char letter = 0;    // TwoCyclic: 'A'..'D'; Exceptional: 'E' or 'F'

    Int order() const;  // p^r, or 2^(2r) for E/F
    std::string text() const;
    bool operator==(const PairingBlock&) const = default;
};

PairingBlock odd_cyclic_block(const Int& p, unsigned r, bool residue);
PairingBlock two_cyclic_block(unsigned r, char letter);
PairingBlock exceptional_block(unsigned r, char letter);

struct PairingDecomposition {
    std::vector<PairingBlock> blocks; // kept canonically sorted

    std::string text() const;
    Int order() const;
    bool operator==(const PairingDecomposition&) const = default;
};

void sort_blocks(std::vector<PairingBlock>& blocks);

/// Letter of the cyclic 2-group pairing with self-pairing numerator a at level 2^r.
char two_cyclic_letter(const Int& numerator, unsigned r);

/// Wall/Miranda splitting into canonical blocks. Degenerate pairings rejected.
PairingDecomposition classify(const GroupWithPairing& gamma);

/// Standard model of one block / an orthogonal sum of blocks.
GroupWithPairing block_group(const PairingBlock& b);
GroupWithPairing orthogonal_sum(const std::vector<GroupWithPairing>& parts);

/// Exhaustive isometry test; both orders must be <= bound.
bool isometric(const GroupWithPairing& g1, const GroupWithPairing& g2,
               const Int& bound = 1024);

/// Isometry test on block decompositions via complete invariants (ranks per
/// prime level, odd determinant classes, 2-adic Gauss-sum arguments). Block
/// decompositions are not unique, so this is the right equality for them.
bool isometric_decompositions(const PairingDecomposition& a, const PairingDecomposition& b);

// ---- canonical text form: "2^3:C + 5^1:nonres" ----

std::string decomposition_text(const PairingDecomposition& d);
PairingDecomposition parse_decomposition(const std::string& text);

} // namespace jacpair

#endif
