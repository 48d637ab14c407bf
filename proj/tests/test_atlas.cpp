#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jacpair/atlas.hpp"
#include "jacpair/pairing.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

using namespace jacpair;

namespace {

std::set<std::string> keys(const std::vector<Multigraph>& graphs) {
    std::set<std::string> out;
    for (const Multigraph& g : graphs) out.insert(canonical_key(g));
    return out;
}

std::vector<Int> group_of(const Multigraph& g) { return jacobian(g, 0).invariant_factors; }

} // namespace

TEST_CASE("smallest enumerations are exactly the short cycles") {
    CHECK(keys(enumerate_2ec(3)) == keys({cycle_graph(3)}));
    CHECK(keys(enumerate_2ec(5)) == keys({cycle_graph(3), cycle_graph(4), cycle_graph(5)}));
    CHECK_THROWS_AS(enumerate_2ec(2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_2ec(33), std::invalid_argument);
}

TEST_CASE("every enumerated graph is simple, 2-edge-connected, and within bound") {
    for (const Multigraph& g : enumerate_2ec(16)) {
        CHECK(stats(g).two_edge_connected);
        CHECK(g.connected());
        for (const EdgeRecord& e : g.edges()) CHECK(e.mult == 1);
        CHECK(spanning_tree_count(g) <= 16);
        // canonical labeling: stored form reproduces itself
        CHECK(canonical_form(g) == g);
    }
}

TEST_CASE("census at 8 matches the hand census") {
    std::vector<CensusRecord> records = census(8);
    std::set<std::string> got;
    for (const CensusRecord& r : records) got.insert(canonical_key(r.canonical_graph));
    std::set<std::string> expected = keys({cycle_graph(3), cycle_graph(4), cycle_graph(5),
                                           cycle_graph(6), cycle_graph(7), cycle_graph(8),
                                           subdivided_banana(STuple({Int(1), Int(2), Int(2)}))});
    CHECK(got == expected);
    // no record carries Z/2 x Z/4
    for (const CensusRecord& r : records) CHECK(r.invariant_factors != std::vector<Int>{2, 4});
    // C8 appears with factors (8)
    bool has_c8 = false;
    for (const CensusRecord& r : records)
        if (canonical_key(r.canonical_graph) == canonical_key(cycle_graph(8))) {
            has_c8 = true;
            CHECK(r.invariant_factors == std::vector<Int>{8});
            CHECK(r.pairing_class == "2^3:B");
        }
    CHECK(has_c8);
}

TEST_CASE("census at 4 lists C3 and C4 with the right factors") {
    std::vector<CensusRecord> records = census(4);
    REQUIRE(records.size() == 2);
    CHECK(records[0].tree_count == 3);
    CHECK(records[0].invariant_factors == std::vector<Int>{3});
    CHECK(records[1].tree_count == 4);
    CHECK(records[1].invariant_factors == std::vector<Int>{4});
}

TEST_CASE("census record invariants") {
    for (const CensusRecord& r : census(16)) {
        Int prod = 1;
        for (const Int& d : r.invariant_factors) prod *= d;
        CHECK(prod == r.tree_count);
        CHECK(spanning_tree_count(r.canonical_graph) == r.tree_count);
        GraphStats st = stats(r.canonical_graph);
        // delta <= mu for biconnected graphs (cut vertices can push the valence
        // past the group exponent, e.g. two triangles sharing a vertex)
        Int mu = r.invariant_factors.empty() ? Int(1) : r.invariant_factors.back();
        if (st.biconnected) CHECK(st.max_valence <= mu);
        // genus at least the number of even invariant factors
        Int evens = 0;
        for (const Int& d : r.invariant_factors)
            if (d % 2 == 0) ++evens;
        CHECK(st.genus >= evens);
        // classification text round-trips
        CHECK(parse_decomposition(r.pairing_class).text() == r.pairing_class);
    }
}

TEST_CASE("oracle: brute-force simple graphs on up to 6 vertices") {
    // all simple connected 2-edge-connected graphs, n <= 6, tau <= 12
    std::set<std::string> oracle;
    for (std::size_t n = 3; n <= 6; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        for (std::size_t mask = 0; mask < (std::size_t(1) << pairs.size()); ++mask) {
            Multigraph g(n);
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1) g.add_edge(pairs[b].first, pairs[b].second, 1);
            if (!g.connected() || g.total_multiplicity() < n) continue; // a 2EC graph has >= n edges
            if (!stats(g).two_edge_connected) continue;
            if (spanning_tree_count(g) > 12) continue;
            oracle.insert(canonical_key(g));
        }
    }
    std::set<std::string> enumerated;
    for (const Multigraph& g : enumerate_2ec(12))
        if (g.vertex_count() <= 6) enumerated.insert(canonical_key(g));
    CHECK(enumerated == oracle);
}

TEST_CASE("enumeration is deterministic") {
    std::vector<Multigraph> a = enumerate_2ec(10), b = enumerate_2ec(10);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("parallel census equals the sequential one") {
    std::vector<CensusRecord> seq = census(12, 1), par = census(12, 4);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].canonical_graph == par[i].canonical_graph);
        CHECK(seq[i].invariant_factors == par[i].invariant_factors);
        CHECK(seq[i].pairing_class == par[i].pairing_class);
    }
}

TEST_CASE("check_absence reproduces the nonoccurrence results") {
    std::vector<CensusRecord> records = census(8);
    CHECK(!check_absence({2}, 8, records).present);
    CHECK(!check_absence({2, 2}, 8, records).present);
    CHECK(!check_absence({2, 2, 2}, 8, records).present);
    CHECK(!check_absence({2, 4}, 8, records).present);

    for (Int n = 3; n <= 8; ++n) {
        AbsenceVerdict v = check_absence({n}, 8, records);
        CHECK(v.present);
        // the witness really carries the target group
        CHECK(group_of(v.witness) == std::vector<Int>{n});
    }

    // composite targets assemble by wedging
    AbsenceVerdict v33 = check_absence({3, 3}, 16, census(16));
    CHECK(v33.present);
    CHECK(group_of(v33.witness) == std::vector<Int>({3, 3}));
    CHECK(v33.parts.size() == 2);

    // trivial group: any tree
    AbsenceVerdict v1 = check_absence({}, 8, records);
    CHECK(v1.present);
    CHECK(v1.witness.vertex_count() == 1);

    CHECK_THROWS_AS(check_absence({2, 4}, 4, records), std::invalid_argument);
}

TEST_CASE("stretch bound: (2,2,4) is absent within 16 trees") {
    std::vector<CensusRecord> records = census(16);
    CHECK(!check_absence({2, 2, 4}, 16, records).present);
    CHECK(check_absence({16}, 16, records).present);
}

TEST_CASE("census TSV is stable and atomic") {
    std::vector<CensusRecord> records = census(8);
    std::string text = census_tsv(records);
    CHECK(text.rfind("trees\tn\tfactors\tclass\tedges\n", 0) == 0);
    CHECK(text.find("3\t3\t3\t3^1:nonres\t") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + static_cast<long>(records.size()));

    std::string path = "census_test_output.tsv";
    write_census_tsv(records, path);
    std::ifstream in(path, std::ios::binary);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == text);
    std::remove(path.c_str());
}
