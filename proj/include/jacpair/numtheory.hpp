#ifndef JACPAIR_NUMTHEORY_HPP
#define JACPAIR_NUMTHEORY_HPP

#include "jacpair/graph.hpp"
#include "jacpair/ints.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jacpair {

/// Jacobi symbol (a/n); equals the Legendre symbol for prime n.
int jacobi(Int a, Int n);

/// Deterministic below 2^64, strong-probable-prime beyond.
bool is_prime(const Int& n);

/// All primes <= bound, by sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Prime factorization (p, exponent) sorted by p. Trial division plus Pollard rho.
std::vector<std::pair<Int, unsigned>> factorize(Int n);

/// Witness for the nonresidue-prime search.
struct NonresidueCertificate {
    Int p;        // odd prime
    unsigned r;   // exponent >= 1
    Int q;        // prime, q = 3 (mod 4), nonresidue mod p, q < 2 p^{r/2}
    Int a;        // 0 < a < q with a(q-a) = p^r (mod q)
    bool valid() const;
};

/// Smallest prime q = 3 (mod 4) with (q/p) = -1 and q < 2 p^{r/2}.
std::optional<Int> find_nonresidue_prime(const Int& p, unsigned r);

/// Square root mod odd prime q (Tonelli-Shanks; (q+1)/4 shortcut when q = 3 mod 4).
std::optional<Int> sqrt_mod(const Int& a, const Int& q);

/// Smallest 0 < a < q with a(q-a) = k (mod q). Requires (k/q) = (-1/q), k != 0 mod q.
Int split_prime(const Int& q, const Int& k);

/// s-tuple with sum_i prod_{j != i} s_j = p^r, gcd(s_i, p) = 1, prod s_i a nonresidue mod p.
/// q_bound_multiplier scales the 2*p^{r/2} search bound on the q-route.
STuple nonresidue_tuple(const Int& p, unsigned r, const Int& q_bound_multiplier = 1);

/// Certificate backing the q-search route of nonresidue_tuple, when that route is taken.
std::optional<NonresidueCertificate> nonresidue_certificate(const Int& p, unsigned r);

/// The parity-dependent tuple realizing the 5 and 3 (mod 8) classes on Z/2^r.
STuple two_group_tuple(unsigned r);

struct QRangeReport {
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> failures;
    Int max_q = 0;
    Rat max_ratio_sq = 0; // max of q^2 / p, exact; ratio = sqrt of this
    std::vector<NonresidueCertificate> certificates; // filled when requested

    std::string summary() const; // "checked=.. failures=.. max_q=.. max_ratio=.."
};

/// Checks find_nonresidue_prime(p, 1) for every prime p <= bound
/// (optionally only p = 1 mod 24). The report is identical for any job count.
QRangeReport verify_q_range(std::uint64_t bound, bool only_1_mod_24,
                            bool emit_certificates = false, unsigned jobs = 1);

/// Decimal rendering of sqrt(x) to six places (used for q/sqrt(p) ratios).
std::string ratio_decimal(const Rat& ratio_sq);

} // namespace jacpair

#endif
