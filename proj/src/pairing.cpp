#include "jacpair/pairing.hpp"

#include "jacpair/numtheory.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jacpair {

JacobianPresentation jacobian(const Multigraph& g, std::size_t base) {
    if (!g.connected()) throw std::invalid_argument("jacobian: graph must be connected");
    if (base >= g.vertex_count()) throw std::invalid_argument("jacobian: base out of range");
    JacobianPresentation j{g, base, {}, {}, IntMatrix(), {}, {}};
    std::size_t n = g.vertex_count();
    if (n == 1) return j;

    SnfResult snf = smith_normal_form(g.reduced_laplacian(base));
    j.U = snf.U;
    for (std::size_t i = 0; i + 1 < n; ++i) j.snf_diagonal.push_back(snf.S(i, i));
    IntMatrix w = inverse_unimodular(snf.U);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (j.snf_diagonal[i] <= 1) continue;
        j.kept_indices.push_back(i);
        j.invariant_factors.push_back(j.snf_diagonal[i]);
        // generator: the divisor whose coordinate vector is e_i, i.e. column i of U^{-1}
        Divisor d(n, 0);
        Int sum = 0;
        for (std::size_t row = 0; row + 1 < n; ++row) {
            std::size_t v = row < base ? row : row + 1;
            d[v] = w(row, i);
            sum += w(row, i);
        }
        d[base] = -sum;
        j.generators.push_back(dhar_reduce(g, d, base));
    }
    return j;
}

std::vector<Int> JacobianPresentation::to_coords(const Divisor& d) const {
    if (d.size() != graph.vertex_count()) throw std::invalid_argument("to_coords: length mismatch");
    if (degree(d) != 0) throw std::invalid_argument("to_coords: divisor must have degree zero");
    std::vector<Int> restr;
    for (std::size_t v = 0; v < d.size(); ++v)
        if (v != base_vertex) restr.push_back(d[v]);
    std::vector<Int> coords;
    if (restr.empty()) return coords;
    std::vector<Int> c = U * restr;
    for (std::size_t t = 0; t < kept_indices.size(); ++t)
        coords.push_back(mod(c[kept_indices[t]], invariant_factors[t]));
    return coords;
}

Rat monodromy_pairing(const Multigraph& g, const Divisor& d1, const Divisor& d2) {
    std::size_t n = g.vertex_count();
    if (d1.size() != n || d2.size() != n) throw std::invalid_argument("monodromy_pairing: length mismatch");
    if (degree(d1) != 0 || degree(d2) != 0)
        throw std::invalid_argument("monodromy_pairing: divisors must have degree zero");
    if (!g.connected()) throw std::invalid_argument("monodromy_pairing: graph must be connected");
    if (n == 1) return 0;
    std::vector<Int> restr;
    for (std::size_t v = 1; v < n; ++v) restr.push_back(d1[v]);
    auto f = solve_rational(g.reduced_laplacian(0), restr);
    if (!f) throw DomainError(ErrorKind::Internal, "monodromy_pairing: singular reduced Laplacian");
    Rat s = 0;
    for (std::size_t v = 1; v < n; ++v) s += Rat(d2[v]) * (*f)[v - 1];
    return mod1(s);
}

Int GroupWithPairing::order() const {
    Int n = 1;
    for (const Int& d : generator_orders) n *= d;
    return n;
}

std::vector<Int> GroupWithPairing::invariant_factors() const {
    std::map<Int, std::vector<unsigned>> exps; // p -> exponents, one per generator
    for (const Int& d : generator_orders)
        for (const auto& [p, e] : factorize(d)) exps[p].push_back(e);
    std::size_t count = 0;
    for (auto& [p, v] : exps) {
        std::sort(v.begin(), v.end(), std::greater<>());
        count = std::max(count, v.size());
    }
    std::vector<Int> factors(count, 1);
    for (const auto& [p, v] : exps)
        for (std::size_t t = 0; t < v.size(); ++t) factors[t] *= pow_int(p, v[t]);
    std::reverse(factors.begin(), factors.end()); // ascending, d1 | d2 | ...
    return factors;
}

GroupWithPairing gram_matrix(const JacobianPresentation& j) {
    GroupWithPairing g;
    g.generator_orders = j.invariant_factors;
    std::size_t k = j.generators.size();
    g.gram.assign(k, std::vector<Rat>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            Rat v = monodromy_pairing(j.graph, j.generators[a], j.generators[b]);
            g.gram[a][b] = v;
            g.gram[b][a] = v;
        }
    return g;
}

// ---- blocks ----

Int PairingBlock::order() const {
    Int pr = pow_int(p, r);
    return kind == Kind::Exceptional ? pr * pr : pr;
}

std::string PairingBlock::text() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::OddCyclic:
            out << p << "^" << r << (residue ? ":res" : ":nonres");
            break;
        case Kind::TwoCyclic:
            out << "2^" << r << ":" << letter;
            break;
        case Kind::Exceptional:
            out << letter << ":2^" << r;
            break;
    }
    return out.str();
}

PairingBlock odd_cyclic_block(const Int& p, unsigned r, bool residue) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("odd cyclic block: p must be an odd prime");
    if (r < 1) throw std::invalid_argument("odd cyclic block: r must be >= 1");
    return {PairingBlock::Kind::OddCyclic, p, r, residue, 0};
}

PairingBlock two_cyclic_block(unsigned r, char letter) {
    if (letter < 'A' || letter > 'D') throw std::invalid_argument("2-cyclic block: letter must be A..D");
    unsigned min_r = letter == 'A' ? 1 : letter == 'B' ? 2 : 3;
    if (r < min_r)
        throw std::invalid_argument(std::string("2-cyclic block: class ") + letter + " requires r >= " +
                                    std::to_string(min_r));
    return {PairingBlock::Kind::TwoCyclic, 2, r, false, letter};
}

PairingBlock exceptional_block(unsigned r, char letter) {
    if (letter != 'E' && letter != 'F') throw std::invalid_argument("exceptional block: letter must be E or F");
    if (r < 1) throw std::invalid_argument("exceptional block: r must be >= 1");
    if (letter == 'F' && r < 2) throw std::invalid_argument("exceptional block: class F requires r >= 2");
    return {PairingBlock::Kind::Exceptional, 2, r, false, letter};
}

namespace {

int class_rank(const PairingBlock& b) {
    switch (b.kind) {
        case PairingBlock::Kind::OddCyclic: return b.residue ? 0 : 1;
        case PairingBlock::Kind::TwoCyclic: return b.letter - 'A';
        case PairingBlock::Kind::Exceptional: return b.letter - 'E';
    }
    return 0;
}

int kind_rank(const PairingBlock& b) { return b.kind == PairingBlock::Kind::Exceptional ? 1 : 0; }

} // namespace

void sort_blocks(std::vector<PairingBlock>& blocks) {
    std::sort(blocks.begin(), blocks.end(), [](const PairingBlock& a, const PairingBlock& b) {
        if (a.p != b.p) return a.p < b.p;
        if (a.r != b.r) return a.r < b.r;
        if (kind_rank(a) != kind_rank(b)) return kind_rank(a) < kind_rank(b);
        return class_rank(a) < class_rank(b);
    });
}

std::string PairingDecomposition::text() const { return decomposition_text(*this); }

Int PairingDecomposition::order() const {
    Int n = 1;
    for (const PairingBlock& b : blocks) n *= b.order();
    return n;
}

char two_cyclic_letter(const Int& numerator, unsigned r) {
    Int c = mod(numerator, pow_int(2, std::min(r, 3u)));
    if (c % 2 == 0) throw std::invalid_argument("two_cyclic_letter: numerator must be odd");
    if (r == 1) return 'A';
    if (r == 2) return c == 1 ? 'A' : 'B';
    if (c == 1) return 'A';
    if (c == 7) return 'B';
    if (c == 5) return 'C';
    return 'D'; // c == 3
}

// ---- classify ----

namespace {

// Element arithmetic in coordinates over the original generators.
struct CoordSpace {
    const GroupWithPairing& g;

    void reduce(std::vector<Int>& v) const {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(v[i], g.generator_orders[i]);
    }
    Rat pairing(const std::vector<Int>& u, const std::vector<Int>& v) const {
        Rat s = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[j] == 0) continue;
                s += Rat(u[i] * v[j]) * g.gram[i][j];
            }
        }
        return mod1(s);
    }
    std::vector<Int> combine(const std::vector<Int>& u, const Int& c, const std::vector<Int>& v) const {
        std::vector<Int> out(u);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
        reduce(out);
        return out;
    }
};

void validate_group(const GroupWithPairing& g) {
    std::size_t k = g.generator_orders.size();
    if (g.gram.size() != k) throw std::invalid_argument("pairing: gram size does not match generator count");
    for (const auto& row : g.gram)
        if (row.size() != k) throw std::invalid_argument("pairing: gram is not square");
    for (std::size_t i = 0; i < k; ++i) {
        if (g.generator_orders[i] < 1) throw std::invalid_argument("pairing: generator orders must be positive");
        for (std::size_t j = 0; j < k; ++j) {
            if (mod1(g.gram[i][j]) != g.gram[i][j])
                throw std::invalid_argument("pairing: gram entries must lie in [0,1)");
            if (g.gram[i][j] != g.gram[j][i]) throw std::invalid_argument("pairing: gram must be symmetric");
            if (den(Rat(g.generator_orders[i]) * g.gram[i][j]) != 1)
                throw std::invalid_argument("pairing: d_i * gram[i][j] must be integral");
        }
    }
}

// Numerator of x over the common denominator p^R.
Int scaled_numerator(const Rat& x, const Int& pR) { return num(x) * (pR / den(x)); }

} // namespace

PairingDecomposition classify(const GroupWithPairing& gamma) {
    validate_group(gamma);
    CoordSpace space{gamma};
    std::size_t k = gamma.generator_orders.size();

    std::map<Int, unsigned> prime_exponents;
    for (const Int& d : gamma.generator_orders)
        for (const auto& [p, e] : factorize(d)) prime_exponents[p] += e;

    std::vector<PairingBlock> blocks;
    for (const auto& [p, total_exp] : prime_exponents) {
        // p-part basis: h_i = (d_i / p^{v_i}) g_i
        std::vector<std::vector<Int>> basis;
        for (std::size_t i = 0; i < k; ++i) {
            Int d = gamma.generator_orders[i];
            Int cof = d;
            while (cof % p == 0) cof /= p;
            if (cof == d) continue; // no p-part
            std::vector<Int> v(k, 0);
            v[i] = cof;
            basis.push_back(v);
        }
        Int extracted = 1;
        while (!basis.empty()) {
            std::size_t m = basis.size();
            std::vector<std::vector<Rat>> pm(m, std::vector<Rat>(m));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i; j < m; ++j) {
                    pm[i][j] = space.pairing(basis[i], basis[j]);
                    pm[j][i] = pm[i][j];
                }
            Int pR = 1;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i; j < m; ++j)
                    if (den(pm[i][j]) > pR) pR = den(pm[i][j]);
            if (pR == 1) break;
            unsigned R = 0;
            {
                Int t = pR;
                while (t % p == 0) {
                    t /= p;
                    ++R;
                }
                if (t != 1)
                    throw DomainError(ErrorKind::Internal,
                                      "classify: pairing denominator is not a power of " + p.str());
            }

            std::size_t diag = m;
            for (std::size_t i = 0; i < m; ++i)
                if (den(pm[i][i]) == pR) {
                    diag = i;
                    break;
                }

            if (p != 2 && diag == m) {
                // only an off-diagonal entry attains p^R; b_i + b_j has self-pairing
                // of full denominator since 2<b_i,b_j> contributes the odd part
                for (std::size_t i = 0; i < m && diag == m; ++i)
                    for (std::size_t j = i + 1; j < m && diag == m; ++j)
                        if (den(pm[i][j]) == pR) {
                            basis[i] = space.combine(basis[i], 1, basis[j]);
                            diag = i;
                        }
            }

            if (diag != m) {
                // split a cyclic block generated by x = basis[diag]
                std::vector<Int> x = basis[diag];
                Rat xx = space.pairing(x, x);
                if (den(xx) != pR)
                    throw DomainError(ErrorKind::Internal, "classify: lost the maximal denominator");
                Int a = num(xx);
                if (p == 2)
                    blocks.push_back(two_cyclic_block(R, two_cyclic_letter(a, R)));
                else
                    blocks.push_back(odd_cyclic_block(p, R, jacobi(a, p) == 1));
                Int a_inv = inv_mod(a, pR);
                std::vector<std::vector<Int>> next;
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == diag) continue;
                    Int e = scaled_numerator(space.pairing(basis[j], x), pR);
                    Int t = mod(e * a_inv, pR);
                    next.push_back(space.combine(basis[j], -t, x));
                }
                basis = std::move(next);
                extracted *= pR;
            } else {
                // p = 2, every full-denominator entry is off-diagonal: E or F block
                std::size_t bi = m, bj = m;
                for (std::size_t i = 0; i < m && bi == m; ++i)
                    for (std::size_t j = i + 1; j < m; ++j)
                        if (den(pm[i][j]) == pR) {
                            bi = i;
                            bj = j;
                            break;
                        }
                if (bi == m) throw DomainError(ErrorKind::Internal, "classify: no attaining pair");
                Int e = num(pm[bi][bj]);
                std::vector<Int> x = basis[bi];
                std::vector<Int> y(k, 0);
                y = space.combine(y, inv_mod(e, pR), basis[bj]); // <x,y> = 1/2^R
                Int ex = scaled_numerator(space.pairing(x, x), pR); // even by case assumption
                Int ey = scaled_numerator(space.pairing(y, y), pR);
                char letter = mod((ex / 2) * (ey / 2), 2) == 1 ? 'F' : 'E';
                blocks.push_back(exceptional_block(R, letter));
                // complement via the inverse of [[ex,1],[1,ey]] mod 2^R (det odd)
                Int det_inv = inv_mod(ex * ey - 1, pR);
                std::vector<std::vector<Int>> next;
                for (std::size_t t = 0; t < m; ++t) {
                    if (t == bi || t == bj) continue;
                    Int e1 = scaled_numerator(space.pairing(basis[t], x), pR);
                    Int e2 = scaled_numerator(space.pairing(basis[t], y), pR);
                    Int s = mod(det_inv * (ey * e1 - e2), pR);
                    Int u = mod(det_inv * (ex * e2 - e1), pR);
                    next.push_back(space.combine(space.combine(basis[t], -s, x), -u, y));
                }
                basis = std::move(next);
                extracted *= pR * pR;
            }
        }
        if (extracted != pow_int(p, total_exp))
            throw DomainError(ErrorKind::Degenerate,
                              "classify: pairing is degenerate on the " + p.str() +
                                  "-part (split covers " + extracted.str() + " of " +
                                  pow_int(p, total_exp).str() + ")");
    }
    sort_blocks(blocks);
    return {blocks};
}

// ---- standard models ----

GroupWithPairing block_group(const PairingBlock& b) {
    GroupWithPairing g;
    Int pr = pow_int(b.p, b.r);
    switch (b.kind) {
        case PairingBlock::Kind::OddCyclic: {
            Int a = 1;
            if (!b.residue)
                while (jacobi(a, b.p) != -1) ++a;
            g.generator_orders = {pr};
            g.gram = {{Rat(a, pr)}};
            break;
        }
        case PairingBlock::Kind::TwoCyclic: {
            Int a = b.letter == 'A' ? Int(1) : b.letter == 'B' ? pr - 1 : b.letter == 'C' ? Int(5) : pr - 5;
            g.generator_orders = {pr};
            g.gram = {{Rat(a, pr)}};
            break;
        }
        case PairingBlock::Kind::Exceptional: {
            g.generator_orders = {pr, pr};
            Rat off(1, pr);
            Rat diag = b.letter == 'E' ? Rat(0) : mod1(Rat(2, pr));
            g.gram = {{diag, off}, {off, diag}};
            break;
        }
    }
    return g;
}

GroupWithPairing orthogonal_sum(const std::vector<GroupWithPairing>& parts) {
    GroupWithPairing g;
    for (const GroupWithPairing& part : parts)
        g.generator_orders.insert(g.generator_orders.end(), part.generator_orders.begin(),
                                  part.generator_orders.end());
    std::size_t k = g.generator_orders.size();
    g.gram.assign(k, std::vector<Rat>(k, Rat(0)));
    std::size_t off = 0;
    for (const GroupWithPairing& part : parts) {
        std::size_t kp = part.generator_orders.size();
        for (std::size_t i = 0; i < kp; ++i)
            for (std::size_t j = 0; j < kp; ++j) g.gram[off + i][off + j] = part.gram[i][j];
        off += kp;
    }
    return g;
}

// ---- brute-force isometry ----

namespace {

std::vector<std::vector<Int>> all_elements(const std::vector<Int>& orders) {
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(orders.size(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < orders.size()) {
            if (++cur[i] < orders[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == orders.size()) break;
    }
    return out;
}

std::string key_of(const std::vector<Int>& v) {
    std::string s;
    for (const Int& x : v) {
        s += x.str();
        s += ',';
    }
    return s;
}

struct IsoSearch {
    const GroupWithPairing& g1;
    const GroupWithPairing& g2;
    CoordSpace space2;
    const std::vector<std::vector<Int>>& candidates; // elements of g2
    std::vector<std::vector<Int>> images;

    bool bijective() const {
        std::set<std::string> seen;
        std::vector<std::vector<Int>> domain = all_elements(g1.generator_orders);
        for (const auto& a : domain) {
            std::vector<Int> img(g2.generator_orders.size(), 0);
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != 0) img = space2.combine(img, a[i], images[i]);
            if (!seen.insert(key_of(img)).second) return false;
        }
        return true;
    }

    bool search(std::size_t i) {
        if (i == g1.generator_orders.size()) return bijective();
        for (const auto& z : candidates) {
            bool ok = true;
            for (std::size_t j = 0; j < z.size() && ok; ++j)
                if (mod(g1.generator_orders[i] * z[j], g2.generator_orders[j]) != 0) ok = false;
            if (!ok) continue;
            if (space2.pairing(z, z) != g1.gram[i][i]) continue;
            for (std::size_t l = 0; l < i && ok; ++l)
                if (space2.pairing(z, images[l]) != g1.gram[i][l]) ok = false;
            if (!ok) continue;
            images.push_back(z);
            if (search(i + 1)) return true;
            images.pop_back();
        }
        return false;
    }
};

} // namespace

bool isometric(const GroupWithPairing& g1, const GroupWithPairing& g2, const Int& bound) {
    validate_group(g1);
    validate_group(g2);
    if (g1.order() > bound || g2.order() > bound)
        throw std::invalid_argument("isometric: group order exceeds the brute-force bound " + bound.str());
    if (g1.order() != g2.order()) return false;
    if (g1.invariant_factors() != g2.invariant_factors()) return false;
    std::vector<std::vector<Int>> candidates = all_elements(g2.generator_orders);
    IsoSearch search{g1, g2, CoordSpace{g2}, candidates, {}};
    return search.search(0);
}

// ---- isometry of decompositions via complete invariants ----
//
// Block decompositions of 2-groups are not unique: for example
// 2^3:C + 2^4:B and 2^3:D + 2^4:A are isometric. Ranks per prime level,
// determinant classes per odd level, and the Gauss-sum arguments of every
// 2^k-scaled pairing together separate isometry classes (checked against the
// brute-force search in the tests).

namespace {

// Argument, in units of pi/4 and mod 8, of sum_x e^{2 pi i 2^k <x,x>} over one
// 2-adic block; 8 encodes a vanishing sum. Magnitudes are group invariants, so
// once ranks match only the arguments matter. Cyclic <a>/2^r reduces to the
// classical quadratic Gauss sum mod 2^(r-k); E is a unit hyperbolic plane whose
// sum is a positive count; F reduces to the sum of x^2+xy+y^2 mod 2^(r-k-1),
// which equals (-2)^(r-k-1).
int gauss_argument(const PairingBlock& b, unsigned k) {
    if (b.kind == PairingBlock::Kind::Exceptional) {
        if (b.letter == 'E' || k + 1 >= b.r) return 0;
        return (b.r - k - 1) % 2 == 1 ? 4 : 0;
    }
    if (k >= b.r) return 0;
    unsigned m = b.r - k;
    if (m == 1) return 8;
    Int pr = pow_int(2, b.r);
    Int a = b.letter == 'A' ? Int(1) : b.letter == 'B' ? pr - 1 : b.letter == 'C' ? Int(5) : pr - 5;
    if (m % 2 == 0) return mod(a, 4) == 1 ? 1 : 7;
    return mod(a, 8).convert_to<int>();
}

std::map<std::pair<Int, unsigned>, int> level_ranks(const PairingDecomposition& d) {
    std::map<std::pair<Int, unsigned>, int> out;
    for (const PairingBlock& b : d.blocks)
        out[{b.p, b.r}] += b.kind == PairingBlock::Kind::Exceptional ? 2 : 1;
    return out;
}

std::map<std::pair<Int, unsigned>, int> odd_det_classes(const PairingDecomposition& d) {
    std::map<std::pair<Int, unsigned>, int> out;
    for (const PairingBlock& b : d.blocks) {
        if (b.kind != PairingBlock::Kind::OddCyclic) continue;
        auto [it, fresh] = out.try_emplace({b.p, b.r}, 1);
        if (!b.residue) it->second = -it->second;
        (void)fresh;
    }
    return out;
}

int gauss_argument_sum(const PairingDecomposition& d, unsigned k) {
    int total = 0;
    for (const PairingBlock& b : d.blocks) {
        if (b.p != 2) continue;
        int arg = gauss_argument(b, k);
        if (arg == 8) return 8;
        total = (total + arg) % 8;
    }
    return total;
}

} // namespace

bool isometric_decompositions(const PairingDecomposition& a, const PairingDecomposition& b) {
    if (level_ranks(a) != level_ranks(b)) return false;
    if (odd_det_classes(a) != odd_det_classes(b)) return false;
    unsigned max_r = 0;
    for (const PairingBlock& blk : a.blocks)
        if (blk.p == 2) max_r = std::max(max_r, blk.r);
    for (unsigned k = 0; k < max_r; ++k)
        if (gauss_argument_sum(a, k) != gauss_argument_sum(b, k)) return false;
    return true;
}

// ---- canonical text ----

std::string decomposition_text(const PairingDecomposition& d) {
    std::vector<PairingBlock> blocks = d.blocks;
    sort_blocks(blocks);
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) out += " + ";
        out += blocks[i].text();
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

unsigned parse_exponent(const std::string& s, const std::string& where) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("decomposition parse error at " + where + ": bad exponent \"" + s + "\"");
    unsigned long v = std::stoul(s);
    if (v < 1 || v > 1000000)
        throw std::invalid_argument("decomposition parse error at " + where + ": exponent out of range");
    return static_cast<unsigned>(v);
}

PairingBlock parse_block(const std::string& token, std::size_t index) {
    std::string where = "block " + std::to_string(index + 1);
    if (token.size() >= 2 && (token[0] == 'E' || token[0] == 'F') && token[1] == ':') {
        std::string rest = token.substr(2);
        unsigned r;
        if (rest == "2")
            r = 1;
        else if (rest.rfind("2^", 0) == 0)
            r = parse_exponent(rest.substr(2), where);
        else
            throw std::invalid_argument("decomposition parse error at " + where +
                                        ": exceptional blocks read \"" + std::string(1, token[0]) +
                                        ":2^r\", got \"" + token + "\"");
        return exceptional_block(r, token[0]);
    }
    std::size_t caret = token.find('^');
    std::size_t colon = token.find(':');
    if (caret == std::string::npos || colon == std::string::npos || caret > colon)
        throw std::invalid_argument("decomposition parse error at " + where +
                                    ": expected \"p^r:class\", got \"" + token + "\"");
    std::string p_text = token.substr(0, caret);
    if (p_text.empty() || p_text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("decomposition parse error at " + where + ": bad prime \"" + p_text + "\"");
    Int p(p_text);
    unsigned r = parse_exponent(token.substr(caret + 1, colon - caret - 1), where);
    std::string cls = token.substr(colon + 1);
    if (p == 2) {
        if (cls.size() != 1 || cls[0] < 'A' || cls[0] > 'D')
            throw std::invalid_argument("decomposition parse error at " + where +
                                        ": 2-group class must be A, B, C or D, got \"" + cls + "\"");
        return two_cyclic_block(r, cls[0]);
    }
    if (!is_prime(p) || p % 2 == 0)
        throw std::invalid_argument("decomposition parse error at " + where + ": " + p.str() +
                                    " is not an odd prime");
    if (cls == "res") return odd_cyclic_block(p, r, true);
    if (cls == "nonres") return odd_cyclic_block(p, r, false);
    throw std::invalid_argument("decomposition parse error at " + where +
                                ": odd class must be res or nonres, got \"" + cls + "\"");
}

} // namespace

PairingDecomposition parse_decomposition(const std::string& text) {
    std::vector<PairingBlock> blocks;
    std::size_t pos = 0, index = 0;
    std::string body = trim(text);
    if (body.empty()) return {};
    for (;;) {
        std::size_t plus = body.find('+', pos);
        std::string token = trim(plus == std::string::npos ? body.substr(pos) : body.substr(pos, plus - pos));
        if (token.empty())
            throw std::invalid_argument("decomposition parse error at block " + std::to_string(index + 1) +
                                        ": empty block");
        blocks.push_back(parse_block(token, index));
        ++index;
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    sort_blocks(blocks);
    return {blocks};
}

} // namespace jacpair
