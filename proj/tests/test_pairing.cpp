#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jacpair/numtheory.hpp"
#include "jacpair/pairing.hpp"

#include <random>

using namespace jacpair;

namespace {

GroupWithPairing cyclic(const Int& order, const Rat& self) {
    GroupWithPairing g;
    g.generator_orders = {order};
    g.gram = {{mod1(self)}};
    return g;
}

Divisor diff(std::size_t n, std::size_t plus, std::size_t minus) {
    Divisor d(n, 0);
    d[plus] += 1;
    d[minus] -= 1;
    return d;
}

} // namespace

TEST_CASE("jacobian presentations of the basic families") {
    JacobianPresentation c4 = jacobian(cycle_graph(4), 0);
    CHECK(c4.invariant_factors == std::vector<Int>({4}));
    REQUIRE(c4.generators.size() == 1);
    CHECK(class_order(c4.graph, c4.generators[0]) == 4);

    JacobianPresentation w = jacobian(wedge(cycle_graph(3), cycle_graph(4), 0, 0), 0);
    CHECK(w.invariant_factors == std::vector<Int>({12}));

    JacobianPresentation k4 = jacobian(complete_graph(4), 0);
    CHECK(k4.invariant_factors == std::vector<Int>({4, 4}));

    JacobianPresentation b222 = jacobian(subdivided_banana(STuple({Int(2), Int(2), Int(2)})), 0);
    CHECK(b222.invariant_factors == std::vector<Int>({2, 6}));

    CHECK(jacobian(banana_graph(1), 0).invariant_factors.empty()); // tree: trivial group
    Multigraph disconnected(2);
    CHECK_THROWS_AS(jacobian(disconnected, 0), std::invalid_argument);
}

TEST_CASE("to_coords is a homomorphism with the right orders") {
    std::mt19937_64 rng(31);
    for (const Multigraph& g :
         {complete_graph(4), multicycle(STuple({Int(2), Int(3), Int(4)})), cycle_graph(6)}) {
        JacobianPresentation j = jacobian(g, 0);
        std::size_t k = j.invariant_factors.size();
        // generator i maps to e_i
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Int> c = j.to_coords(j.generators[i]);
            for (std::size_t t = 0; t < k; ++t) CHECK(c[t] == (t == i ? 1 : 0));
            CHECK(class_order(g, j.generators[i]) == j.invariant_factors[i]);
        }
        // random sums map additively
        std::uniform_int_distribution<int> coef(0, 6);
        for (int trial = 0; trial < 10; ++trial) {
            Divisor sum(g.vertex_count(), 0);
            std::vector<Int> expect(k, 0);
            for (std::size_t i = 0; i < k; ++i) {
                int c = coef(rng);
                expect[i] = mod(c, j.invariant_factors[i]);
                for (std::size_t v = 0; v < sum.size(); ++v) sum[v] += c * j.generators[i][v];
            }
            CHECK(j.to_coords(sum) == expect);
        }
    }
}

TEST_CASE("product of invariant factors equals tree count") {
    for (const Multigraph& g : {cycle_graph(5), complete_graph(4),
                                subdivided_banana(STuple({Int(4), Int(2), Int(3)})),
                                multicycle(STuple({Int(1), Int(3), Int(4), Int(2)}))}) {
        Int prod = 1;
        for (const Int& d : jacobian(g, 0).invariant_factors) prod *= d;
        CHECK(prod == spanning_tree_count(g));
    }
}

TEST_CASE("monodromy pairing on bananas and cycles") {
    for (int n : {3, 5, 8}) {
        Multigraph b = banana_graph(n);
        CHECK(monodromy_pairing(b, diff(2, 0, 1), diff(2, 0, 1)) == Rat(1, n));
        Multigraph c = cycle_graph(n);
        CHECK(monodromy_pairing(c, diff(n, 1, 0), diff(n, 1, 0)) == Rat(n - 1, n));
    }
}

TEST_CASE("monodromy pairing matches the section-4 generator values") {
    // B_(1,2,2): hubs 0,1; <D,D> = 5/8 for the SNF generator
    JacobianPresentation b = jacobian(subdivided_banana(STuple({Int(1), Int(2), Int(2)})), 0);
    REQUIRE(b.invariant_factors == std::vector<Int>({8}));
    Rat self = monodromy_pairing(b.graph, b.generators[0], b.generators[0]);
    CHECK(den(self) == 8);
    CHECK(mod(num(self), 8) == 5); // up to unit squares {1} mod 8... exact value
    // C_(1,2,2): multicycle, v2 - v0 pairs to 3/8
    Multigraph mc = multicycle(STuple({Int(1), Int(2), Int(2)}));
    // find the vertex pair giving 3/8: parts sorted (1,2,2) around the cycle
    bool found = false;
    for (std::size_t v = 1; v < 3 && !found; ++v)
        found = monodromy_pairing(mc, diff(3, v, 0), diff(3, v, 0)) == Rat(3, 8);
    CHECK(found);
}

TEST_CASE("pairing is symmetric, bilinear, and class-invariant") {
    std::mt19937_64 rng(88);
    Multigraph g = multicycle(STuple({Int(2), Int(3), Int(4)}));
    std::uniform_int_distribution<int> vd(-3, 3);
    auto random_d0 = [&] {
        Divisor d(g.vertex_count(), 0);
        Int s = 0;
        for (std::size_t v = 1; v < d.size(); ++v) {
            d[v] = vd(rng);
            s += d[v];
        }
        d[0] = -s;
        return d;
    };
    for (int trial = 0; trial < 20; ++trial) {
        Divisor a = random_d0(), b = random_d0(), c = random_d0();
        CHECK(monodromy_pairing(g, a, b) == monodromy_pairing(g, b, a));
        Divisor bc(b);
        for (std::size_t v = 0; v < bc.size(); ++v) bc[v] += c[v];
        CHECK(monodromy_pairing(g, a, bc) ==
              mod1(monodromy_pairing(g, a, b) + monodromy_pairing(g, a, c)));
        // replace a by an equivalent divisor
        PotentialFunction f(g.vertex_count());
        for (auto& x : f) x = vd(rng);
        Divisor a2(a);
        Divisor pr = div_of(g, f);
        for (std::size_t v = 0; v < a2.size(); ++v) a2[v] += pr[v];
        CHECK(monodromy_pairing(g, a2, b) == monodromy_pairing(g, a, b));
    }
}

TEST_CASE("gram matrices of the worked examples") {
    GroupWithPairing c5 = gram_matrix(jacobian(cycle_graph(5), 0));
    REQUIRE(c5.gram.size() == 1);
    CHECK(c5.gram[0][0] == Rat(4, 5));

    GroupWithPairing k4 = gram_matrix(jacobian(complete_graph(4), 0));
    REQUIRE(k4.generator_orders == std::vector<Int>({4, 4}));
    CHECK(k4.gram[0][1] == k4.gram[1][0]);
    // classifies as the exceptional F block at r = 2
    PairingDecomposition d = classify(k4);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0] == exceptional_block(2, 'F'));
}

TEST_CASE("wedge gram is block diagonal in per-summand generators") {
    Multigraph g1 = cycle_graph(3), g2 = banana_graph(4);
    Multigraph w = wedge(g1, g2, 0, 0);
    Divisor a = diff(w.vertex_count(), 1, 0);                                   // inside g1
    Divisor b = diff(w.vertex_count(), wedge_vertex_of_second(g1, 0, 0, 1), 0); // inside g2
    CHECK(monodromy_pairing(w, a, b) == Rat(0));
    CHECK(monodromy_pairing(w, a, a) == Rat(2, 3));
    CHECK(monodromy_pairing(w, b, b) == Rat(1, 4));
}

TEST_CASE("classify: canonical examples") {
    PairingDecomposition a8 = classify(cyclic(8, Rat(1, 8)));
    REQUIRE(a8.blocks.size() == 1);
    CHECK(a8.blocks[0] == two_cyclic_block(3, 'A'));

    PairingDecomposition d8 = classify(cyclic(8, Rat(3, 8)));
    CHECK(d8.blocks[0] == two_cyclic_block(3, 'D'));

    GroupWithPairing e2;
    e2.generator_orders = {2, 2};
    e2.gram = {{Rat(0), Rat(1, 2)}, {Rat(1, 2), Rat(0)}};
    PairingDecomposition e = classify(e2);
    REQUIRE(e.blocks.size() == 1);
    CHECK(e.blocks[0] == exceptional_block(1, 'E'));

    PairingDecomposition n5 = classify(cyclic(5, Rat(2, 5)));
    CHECK(n5.blocks[0] == odd_cyclic_block(5, 1, false)); // squares mod 5 are {1,4}

    CHECK(classify(cyclic(5, Rat(4, 5))).blocks[0] == odd_cyclic_block(5, 1, true));
    CHECK(classify(cyclic(4, Rat(3, 4))).blocks[0] == two_cyclic_block(2, 'B'));
    CHECK(classify(cyclic(2, Rat(1, 2))).blocks[0] == two_cyclic_block(1, 'A'));
    CHECK(classify(GroupWithPairing{}).blocks.empty());
}

TEST_CASE("classify rejects degenerate pairings") {
    CHECK_THROWS_AS(classify(cyclic(2, Rat(0))), DomainError);
    GroupWithPairing half;
    half.generator_orders = {4};
    half.gram = {{Rat(1, 2)}}; // order 4 but pairing only sees Z/2
    CHECK_THROWS_AS(classify(half), DomainError);
    try {
        classify(cyclic(3, Rat(0)));
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
    }
}

TEST_CASE("classify splits mixed groups") {
    GroupWithPairing mixed = orthogonal_sum(
        {block_group(two_cyclic_block(3, 'C')), block_group(odd_cyclic_block(5, 1, false))});
    PairingDecomposition d = classify(mixed);
    REQUIRE(d.blocks.size() == 2);
    CHECK(d.blocks[0] == two_cyclic_block(3, 'C'));
    CHECK(d.blocks[1] == odd_cyclic_block(5, 1, false));
    CHECK(d.text() == "2^3:C + 5^1:nonres");
}

TEST_CASE("isometric: basics") {
    GroupWithPairing a4 = cyclic(4, Rat(1, 4)), b4 = cyclic(4, Rat(3, 4));
    CHECK(isometric(a4, a4));
    CHECK(!isometric(a4, b4));
    // 3/4 = (-1)*1/4 and 1/4 related by unit squares? units mod 4: 1,3; 3^2=1 -> distinct
    GroupWithPairing big = cyclic(4096, Rat(1, 4096));
    CHECK_THROWS_AS(isometric(big, big), std::invalid_argument);
    // same group, different presentation of the same class
    CHECK(isometric(cyclic(5, Rat(2, 5)), cyclic(5, Rat(3, 5)))); // both nonresidue
    CHECK(!isometric(cyclic(5, Rat(2, 5)), cyclic(5, Rat(1, 5))));
    CHECK(!isometric(cyclic(4, Rat(1, 4)), cyclic(2, Rat(1, 2))));
}

TEST_CASE("decomposition isometry invariants agree with brute-force search") {
    std::mt19937_64 rng(777);
    std::vector<PairingBlock> pool = {
        two_cyclic_block(1, 'A'),      two_cyclic_block(2, 'A'),       two_cyclic_block(2, 'B'),
        two_cyclic_block(3, 'A'),      two_cyclic_block(3, 'B'),       two_cyclic_block(3, 'C'),
        two_cyclic_block(3, 'D'),      two_cyclic_block(4, 'A'),       two_cyclic_block(4, 'B'),
        exceptional_block(1, 'E'),     exceptional_block(2, 'E'),      exceptional_block(2, 'F'),
        odd_cyclic_block(3, 1, true),  odd_cyclic_block(3, 1, false)};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, 3);
    auto draw = [&]() {
        PairingDecomposition d;
        Int order = 1;
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            PairingBlock b = pool[pick(rng)];
            if (order * b.order() > 512) continue;
            order *= b.order();
            d.blocks.push_back(b);
        }
        sort_blocks(d.blocks);
        return d;
    };
    auto rebuild = [](const PairingDecomposition& d) {
        std::vector<GroupWithPairing> parts;
        for (const PairingBlock& b : d.blocks) parts.push_back(block_group(b));
        return orthogonal_sum(parts);
    };
    for (int trial = 0; trial < 150; ++trial) {
        PairingDecomposition d1 = draw(), d2 = draw();
        if (d1.blocks.empty() || d2.blocks.empty()) continue;
        CHECK(isometric_decompositions(d1, d2) == isometric(rebuild(d1), rebuild(d2)));
    }
    // a cross-level relation among 2-adic blocks
    PairingDecomposition cb = parse_decomposition("2^3:C + 2^4:B");
    PairingDecomposition da = parse_decomposition("2^3:D + 2^4:A");
    CHECK(isometric_decompositions(cb, da));
    CHECK(isometric(rebuild(cb), rebuild(da)));
    CHECK(!isometric_decompositions(cb, parse_decomposition("2^3:C + 2^4:A")));
    // a same-level relation among odd blocks
    PairingDecomposition nn = parse_decomposition("3^1:nonres + 3^1:nonres");
    PairingDecomposition rr = parse_decomposition("3^1:res + 3^1:res");
    CHECK(isometric_decompositions(nn, rr));
    CHECK(isometric(rebuild(nn), rebuild(rr)));
}

TEST_CASE("classify then rebuild is isometric to the input") {
    std::mt19937_64 rng(4096);
    std::vector<PairingBlock> pool = {
        odd_cyclic_block(3, 1, true),  odd_cyclic_block(3, 1, false), odd_cyclic_block(5, 1, true),
        odd_cyclic_block(7, 1, false), odd_cyclic_block(3, 2, false), two_cyclic_block(1, 'A'),
        two_cyclic_block(2, 'B'),      two_cyclic_block(3, 'C'),      two_cyclic_block(3, 'D'),
        exceptional_block(1, 'E'),     exceptional_block(2, 'F')};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<PairingBlock> blocks;
        std::vector<GroupWithPairing> parts;
        Int order = 1;
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            PairingBlock b = pool[pick(rng)];
            if (order * b.order() > 1024) continue;
            order *= b.order();
            blocks.push_back(b);
            parts.push_back(block_group(b));
        }
        if (parts.empty()) continue;
        GroupWithPairing gamma = orthogonal_sum(parts);
        PairingDecomposition dec = classify(gamma);
        sort_blocks(blocks);
        // block decompositions are not unique, so compare up to isometry
        CHECK(isometric_decompositions(dec, PairingDecomposition{blocks}));
        std::vector<GroupWithPairing> rebuilt;
        for (const PairingBlock& b : dec.blocks) rebuilt.push_back(block_group(b));
        CHECK(isometric(gamma, orthogonal_sum(rebuilt)));
    }
}

TEST_CASE("base independence of the jacobian pairing") {
    for (const Multigraph& g :
         {complete_graph(4), multicycle(STuple({Int(1), Int(2), Int(2)})), cycle_graph(6)}) {
        GroupWithPairing g0 = gram_matrix(jacobian(g, 0));
        GroupWithPairing g1 = gram_matrix(jacobian(g, g.vertex_count() - 1));
        CHECK(classify(g0).blocks == classify(g1).blocks);
        if (g0.order() <= 1024) CHECK(isometric(g0, g1));
    }
}

TEST_CASE("decomposition text round trips") {
    PairingDecomposition d = parse_decomposition("2^3:C + 5^1:nonres");
    CHECK(d.text() == "2^3:C + 5^1:nonres");
    CHECK(parse_decomposition("5^1:nonres").blocks.size() == 1);
    CHECK(parse_decomposition("E:2").blocks[0] == exceptional_block(1, 'E'));
    CHECK(parse_decomposition("E:2^1").blocks[0] == exceptional_block(1, 'E'));
    CHECK(parse_decomposition("F:2^2").blocks[0] == exceptional_block(2, 'F'));
    CHECK(parse_decomposition("7^2:res").blocks[0] == odd_cyclic_block(7, 2, true));
    // canonical ordering is enforced on parse
    CHECK(parse_decomposition("5^1:res + 2^1:A").text() == "2^1:A + 5^1:res");

    CHECK_THROWS_WITH_AS(parse_decomposition("2^2:C"), doctest::Contains("r >= 3"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_decomposition("F:2^1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decomposition("4^1:res"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decomposition("2^3:res"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decomposition("5^1:A"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decomposition("5^1:res + "), std::invalid_argument);
    CHECK_THROWS_AS(parse_decomposition("junk"), std::invalid_argument);
}

TEST_CASE("prop 3.2: subdivided banana pairing and class") {
    std::mt19937_64 rng(333);
    std::uniform_int_distribution<int> part(1, 12);
    std::uniform_int_distribution<int> arity(2, 4);
    int done = 0;
    while (done < 20) {
        std::vector<Int> parts;
        int m = arity(rng);
        for (int i = 0; i < m; ++i) parts.emplace_back(part(rng));
        STuple s(parts);
        Int n = s.complementary_sum();
        auto fac = factorize(n);
        if (fac.size() != 1 || fac[0].first == 2 || n > 10000) continue;
        Int p = fac[0].first;
        unsigned r = fac[0].second;
        bool coprime = true;
        for (const Int& si : s.parts)
            if (gcd(si, p) != 1) coprime = false;
        if (!coprime) continue;
        ++done;
        JacobianPresentation j = jacobian(subdivided_banana(s), 0);
        REQUIRE(j.invariant_factors == std::vector<Int>({n}));
        Rat self = monodromy_pairing(j.graph, j.generators[0], j.generators[0]);
        // self = (prod s) * x^2 / p^r up to unit squares
        Int numerator = num(self) * (n / den(self));
        CHECK(jacobi(mod(numerator * inv_mod(s.product(), n), n), p) == 1);
        PairingDecomposition d = classify(gram_matrix(j));
        REQUIRE(d.blocks.size() == 1);
        CHECK(d.blocks[0] == odd_cyclic_block(p, r, jacobi(s.product(), p) == 1));
    }
}
