#include "jacpair/realize.hpp"

#include "jacpair/numtheory.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace jacpair {

RealizationSpec parse_spec(const std::string& text) {
    RealizationSpec spec;
    spec.decomposition = parse_decomposition(text);
    return spec;
}

bool verify_realization(const Multigraph& g, const RealizationSpec& spec, std::string* diff) {
    PairingDecomposition got = classify(gram_matrix(jacobian(g, 0)));
    PairingDecomposition want = spec.decomposition;
    sort_blocks(want.blocks);
    if (isometric_decompositions(got, want)) return true;
    if (diff) *diff = "computed " + got.text() + " vs target " + want.text();
    return false;
}

namespace {

std::string tuple_text(const STuple& s) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < s.parts.size(); ++i) out << (i ? "," : "") << s.parts[i];
    out << ")";
    return out.str();
}

std::vector<Int> divisors_of(const Int& n) {
    std::vector<Int> divs = {1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t count = divs.size();
        Int power = 1;
        for (unsigned t = 1; t <= e; ++t) {
            power *= p;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * power);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Multicycle tuple (1,...,1,b,c) with t ones, complementary sum p^r, and
// Legendre(-prod | p) = -1: needs a divisor d = 1 (mod t) of t*p^r + 1 with
// (d|p) = -1, via (tb+1)(tc+1) = t*p^r + 1 and -prod = d*((d-1)/t)^2 / t^2 mod p.
std::optional<STuple> factor_search_tuple(const Int& p, unsigned r) {
    Int pr = pow_int(p, r);
    for (Int t = 1; t <= 16; ++t) {
        Int n = t * pr + 1;
        for (const Int& d : divisors_of(n)) {
            if (d <= 1 || d >= n) continue;
            Int dd = n / d;
            if (mod(d - 1, t) != 0 || mod(dd - 1, t) != 0) continue;
            Int b = (d - 1) / t, c = (dd - 1) / t;
            if (b < 1 || c < 1) continue;
            if (gcd(b, p) != 1 || gcd(c, p) != 1) continue;
            if (jacobi(d, p) != -1) continue;
            std::vector<Int> parts(static_cast<std::size_t>(t), Int(1));
            parts.push_back(b);
            parts.push_back(c);
            return STuple(parts);
        }
    }
    return std::nullopt;
}

using Candidate = std::pair<Multigraph, std::string>;

std::vector<Candidate> odd_nonresidue_candidates(const Int& p, unsigned r, const Int& mult) {
    Int pr = pow_int(p, r);
    std::vector<Candidate> out;
    STuple base = nonresidue_tuple(p, r, mult); // NoWitness propagates
    if (p % 4 == 1 && base.size() >= 3)
        out.emplace_back(multicycle(base), "multicycle C_s, s=" + tuple_text(base));
    if (p % 8 == 3) {
        STuple s({Int(1), Int(1), (pr - 1) / 2});
        out.emplace_back(multicycle(s), "multicycle C_s, s=" + tuple_text(s));
    }
    if (p % 8 == 7 && p % 3 == 1) {
        STuple s({Int(1), Int(1), Int(1), (pr - 1) / 3});
        out.emplace_back(multicycle(s), "multicycle C_s, s=" + tuple_text(s));
    }
    if (p % 8 == 7 && p % 3 == 2) {
        if (auto s = factor_search_tuple(p, r))
            out.emplace_back(multicycle(*s), "multicycle C_s, s=" + tuple_text(*s));
    }
    Int total = 0;
    for (const Int& si : base.parts) total += si;
    if (total <= 64)
        out.emplace_back(subdivided_banana(base), "subdivided banana B_s, s=" + tuple_text(base));
    return out;
}

// Which of the two section-4 graphs carries C and which carries D depends on r;
// classify both once per r and remember.
std::pair<char, char> two_group_letters(unsigned r) {
    static std::map<unsigned, std::pair<char, char>> cache;
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    STuple s = two_group_tuple(r);
    auto letter_of = [](const Multigraph& g) {
        PairingDecomposition d = classify(gram_matrix(jacobian(g, 0)));
        if (d.blocks.size() != 1 || d.blocks[0].kind != PairingBlock::Kind::TwoCyclic)
            throw DomainError(ErrorKind::Internal,
                              "two-group construction did not yield a cyclic 2-group pairing");
        return d.blocks[0].letter;
    };
    std::pair<char, char> letters = {letter_of(subdivided_banana(s)), letter_of(multicycle(s))};
    cache[r] = letters;
    return letters;
}

std::vector<Candidate> block_candidates(const PairingBlock& b, const Int& mult) {
    switch (b.kind) {
        case PairingBlock::Kind::OddCyclic:
            if (b.residue) return {{banana_graph(pow_int(b.p, b.r)), "banana B_{p^r}"}};
            return odd_nonresidue_candidates(b.p, b.r, mult);
        case PairingBlock::Kind::TwoCyclic: {
            Int pr = pow_int(2, b.r);
            if (b.letter == 'A') return {{banana_graph(pr), "banana B_{2^r}"}};
            if (b.letter == 'B') return {{cycle_graph(static_cast<std::size_t>(pr)), "cycle C_{2^r}"}};
            STuple s = two_group_tuple(b.r);
            auto [banana_letter, cycle_letter] = two_group_letters(b.r);
            if (b.letter == banana_letter)
                return {{subdivided_banana(s), "subdivided banana B_s, s=" + tuple_text(s)}};
            if (b.letter == cycle_letter)
                return {{multicycle(s), "multicycle C_s, s=" + tuple_text(s)}};
            throw DomainError(ErrorKind::Internal,
                              std::string("neither section-4 construction carries class ") + b.letter);
        }
        case PairingBlock::Kind::Exceptional:
            if (b.letter == 'F' && b.r == 2) return {{complete_graph(4), "complete graph K4"}};
            throw DomainError(ErrorKind::Unrealizable,
                              "no known graph realizes block " + b.text() +
                                  "; such Jacobians are conjectured not to exist");
    }
    throw DomainError(ErrorKind::Internal, "unknown block kind");
}

} // namespace

RealizedGraph realize(const RealizationSpec& spec) {
    if (spec.q_bound_multiplier < 1)
        throw std::invalid_argument("realize: q bound multiplier must be >= 1");
    RealizedGraph result;
    PairingDecomposition target = spec.decomposition;
    sort_blocks(target.blocks);

    bool first = true;
    for (const PairingBlock& b : target.blocks) {
        Multigraph chosen(1);
        std::string note;
        bool ok = false;
        for (const Candidate& cand : block_candidates(b, spec.q_bound_multiplier)) {
            RealizationSpec single;
            single.decomposition.blocks = {b};
            if (verify_realization(cand.first, single)) {
                chosen = cand.first;
                note = cand.second;
                ok = true;
                break;
            }
        }
        if (!ok)
            throw DomainError(ErrorKind::Internal,
                              "every candidate construction for block " + b.text() +
                                  " failed verification");
        result.block_notes.push_back(b.text() + " -> " + note);
        result.graph = first ? chosen : wedge(result.graph, chosen, 0, 0);
        first = false;
    }

    std::string diff;
    if (!verify_realization(result.graph, spec, &diff))
        throw DomainError(ErrorKind::Internal, "realized graph failed verification: " + diff);
    return result;
}

} // namespace jacpair
